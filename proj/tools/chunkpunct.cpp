// chunkpunct: command-line front end for the chunked restoration pipeline.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chunkpunct/chunkpunct.hpp"
#include "chunkpunct/report_io.hpp"

namespace cp = chunkpunct;

namespace {

enum Exit : int { kOk = 0, kConfig = 2, kIo = 3, kModel = 4, kMismatch = 5, kOther = 1 };

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw cp::IoError("cannot open '" + path + "' for reading");
  return {std::istreambuf_iterator<char>(in), {}};
}

std::vector<std::string> read_lines(const std::string& path) {
  std::istringstream is(read_all(path));
  std::vector<std::string> lines;
  for (std::string line; std::getline(is, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

/// Standard output for "-", otherwise a file opened for writing.
class Output {
 public:
  explicit Output(const std::string& path) : path_(path) {
    if (path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw cp::IoError("cannot open '" + path + "' for writing");
    }
  }

  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }

  void line(const std::string& s) { stream() << s << '\n'; }

  void close() {
    stream().flush();
    if (!stream()) throw cp::IoError("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

struct IndexRow {
  std::size_t index;
  std::size_t start;
  std::size_t len;
};

std::size_t parse_count(const std::string& s, const std::string& where) {
  std::size_t used = 0;
  std::size_t v = 0;
  try {
    v = std::stoull(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size() || s[0] == '-') {
    throw cp::FormatError(where + ": bad number '" + s + "'");
  }
  return v;
}

std::vector<IndexRow> read_index(const std::string& path) {
  std::vector<IndexRow> rows;
  const auto lines = read_lines(path);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(lines[i]);
    for (std::string cell; std::getline(ss, cell, '\t');) f.push_back(cell);
    const std::string where = "index line " + std::to_string(i + 1);
    if (f.size() != 3) throw cp::FormatError(where + ": expected index<TAB>start<TAB>len");
    rows.push_back({parse_count(f[0], where), parse_count(f[1], where), parse_count(f[2], where)});
  }
  return rows;
}

/// A document as described by consecutive index rows; row index 0 starts a new one.
struct DocRows {
  std::size_t first_line;
  std::vector<IndexRow> rows;

  std::size_t words() const { return rows.empty() ? 0 : rows.back().start + rows.back().len; }
};

std::vector<DocRows> group_documents(const std::vector<IndexRow>& rows) {
  std::vector<DocRows> docs;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].index == 0 || docs.empty()) docs.push_back({i, {}});
    docs.back().rows.push_back(rows[i]);
  }
  return docs;
}

std::vector<std::vector<std::string>> read_documents(const std::string& path) {
  std::vector<std::vector<std::string>> docs;
  for (const auto& line : read_lines(path)) docs.push_back(cp::split_words(line));
  return docs;
}

void check_chunk_lines(std::size_t lines, std::size_t rows) {
  if (lines != rows) {
    throw cp::FormatError("chunk file has " + std::to_string(lines) + " lines but the index has " +
                          std::to_string(rows) + " rows");
  }
}

struct ChunkArgs {
  std::size_t chunk_size = 30;
  std::optional<std::size_t> overlap;

  void add(CLI::App* cmd) {
    cmd->add_option("--chunk-size,-k", chunk_size, "Words per chunk")->capture_default_str();
    cmd->add_option("--overlap", overlap, "Words shared by consecutive chunks (default: chunk size / 2)");
  }

  cp::ChunkConfig config() const {
    cp::ChunkConfig cfg{chunk_size, overlap.value_or(chunk_size / 2)};
    cfg.validate();
    return cfg;
  }
};

struct MergeArgs {
  std::optional<std::size_t> min_words_cut;

  void add(CLI::App* cmd) {
    cmd->add_option("--min-words-cut,-m", min_words_cut,
                    "Overlap positions taken from the later chunk (default: overlap / 2)");
  }

  cp::MergeConfig config(const cp::ChunkConfig& cfg) const {
    cp::MergeConfig m{min_words_cut.value_or(cfg.overlap / 2)};
    m.validate(cfg);
    return m;
  }
};

struct ModelArgs {
  std::string model = "oracle";
  std::size_t boundary_width = 3;
  double noise_prob = 1.0;
  std::uint64_t seed = 0;
  std::string table;
  std::string model_cmd;
  std::string model_format = "plain";
  std::size_t batch_size = 64;
  int timeout_ms = 30000;
  std::string reference;
  std::string reference_format = "plain";

  void add(CLI::App* cmd) {
    cmd->add_option("--model", model, "oracle | noise | baseline | external")->capture_default_str();
    cmd->add_option("--reference", reference, "Reference documents, one per line (oracle and noise models)");
    cmd->add_option("--reference-format", reference_format, "plain | encoded")->capture_default_str();
    cmd->add_option("--boundary-width", boundary_width, "Noise model: edge width b")->capture_default_str();
    cmd->add_option("--noise-prob", noise_prob, "Noise model: corruption probability p")->capture_default_str();
    cmd->add_option("--seed", seed, "Noise model: random seed")->capture_default_str();
    cmd->add_option("--table", table, "Baseline model: table written by train-baseline");
    cmd->add_option("--model-cmd", model_cmd, "External model: shell command");
    cmd->add_option("--model-format", model_format, "External model output: plain | encoded")
        ->capture_default_str();
    cmd->add_option("--batch-size", batch_size, "External model: chunks per batch")->capture_default_str();
    cmd->add_option("--timeout-ms", timeout_ms, "External model: per-batch timeout")->capture_default_str();
  }

  cp::RestorerSpec spec() const {
    cp::RestorerSpec s;
    s.kind = cp::RestorerSpec::parse_kind(model);
    s.boundary_width = boundary_width;
    s.probability = noise_prob;
    s.seed = seed;
    s.table_path = table;
    s.external.command = model_cmd;
    s.external.format = cp::parse_line_format(model_format);
    s.external.batch_size = batch_size;
    s.external.timeout_ms = timeout_ms;
    return s;
  }

  /// Reference documents; encoded references take their words from `words`.
  std::vector<cp::LabeledSequence> load_reference(
      const std::vector<std::vector<std::string>>* words) const {
    const auto format = cp::parse_line_format(reference_format);
    const auto lines = read_lines(reference);
    if (format == cp::LineFormat::Encoded && !words) {
      throw cp::ConfigError("an encoded reference needs the matching word documents (--input)");
    }
    if (words && words->size() != lines.size()) {
      throw cp::MismatchError("reference has " + std::to_string(lines.size()) +
                              " documents, input has " + std::to_string(words->size()));
    }
    std::vector<cp::LabeledSequence> refs;
    for (std::size_t i = 0; i < lines.size(); ++i) {
      try {
        refs.push_back(format == cp::LineFormat::Plain ? cp::parse_plain(lines[i])
                                                       : cp::decode(lines[i], (*words)[i]));
      } catch (const cp::FormatError& e) {
        throw cp::FormatError("reference line " + std::to_string(i + 1) + ": " + e.what());
      } catch (const cp::MismatchError& e) {
        throw cp::MismatchError("reference line " + std::to_string(i + 1) + ": " + e.what());
      }
    }
    return refs;
  }
};

// ---------------------------------------------------------------------------

struct PrepareCmd {
  std::string input, output = "-", format = "plain";
  ChunkArgs chunk;
  bool ascii_only = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("prepare", "Clean raw text and write (input, target) chunk pairs as TSV");
    cmd->add_option("--input,-i", input, "Raw UTF-8 text")->required();
    cmd->add_option("--output,-o", output, "Pair TSV")->capture_default_str();
    cmd->add_option("--format", format, "Target format: plain | encoded")->capture_default_str();
    cmd->add_flag("--ascii-only", ascii_only, "Keep only ASCII letters in words");
    chunk.add(cmd);
  }

  int run() const {
    const auto cfg = chunk.config();
    const auto sentences = cp::clean_text(read_all(input), ascii_only);
    Output out(output);
    for (const auto& p : cp::make_pairs(sentences, cfg, cp::parse_line_format(format))) {
      out.line(p.input + '\t' + p.target);
    }
    out.close();
    return kOk;
  }
};

struct SplitCmd {
  std::string input, output, index;
  ChunkArgs chunk;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("split", "Split documents (one per line) into overlapped chunks");
    cmd->add_option("--input,-i", input, "Lowercase documents, one per line")->required();
    cmd->add_option("--output,-o", output, "Chunk lines")->required();
    cmd->add_option("--index", index, "Sidecar TSV index<TAB>start<TAB>len (default: <output>.idx)");
    chunk.add(cmd);
  }

  int run() const {
    const auto cfg = chunk.config();
    std::string index_path = index;
    if (index_path.empty()) {
      if (output == "-") throw cp::ConfigError("--index is required when writing chunks to standard output");
      index_path = output + ".idx";
    }
    Output out(output);
    Output idx(index_path);
    for (const auto& words : read_documents(input)) {
      if (words.empty()) {
        out.line("");
        idx.line("0\t0\t0");
        continue;
      }
      for (const auto& c : cp::split(words, cfg)) {
        out.line(cp::join(c.words));
        idx.line(std::to_string(c.index) + '\t' + std::to_string(c.start) + '\t' +
                 std::to_string(c.words.size()));
      }
    }
    out.close();
    idx.close();
    return kOk;
  }
};

struct RestoreCmd {
  std::string input, chunks, index, output = "-", output_format = "plain";
  ChunkArgs chunk;
  MergeArgs merge;
  ModelArgs model;
  std::size_t workers = 1;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand(
        "restore",
        "Restore case and punctuation. With --input (or a reference alone) runs split, restore and "
        "merge per document; with --chunks and --index restores chunk lines only");
    cmd->add_option("--input,-i", input, "Lowercase documents, one per line");
    cmd->add_option("--chunks", chunks, "Chunk lines written by split");
    cmd->add_option("--index", index, "Sidecar index written by split");
    cmd->add_option("--output,-o", output, "Restored lines")->capture_default_str();
    cmd->add_option("--output-format", output_format, "plain | encoded")->capture_default_str();
    cmd->add_option("--workers,-j", workers, "Restoration threads")->capture_default_str();
    chunk.add(cmd);
    merge.add(cmd);
    model.add(cmd);
  }

  int run() const {
    if (!chunks.empty()) return run_chunks();
    return run_documents();
  }

  int run_documents() const {
    cp::PipelineConfig pcfg;
    pcfg.chunk = chunk.config();
    pcfg.merge = merge.config(pcfg.chunk);
    pcfg.workers = workers;
    pcfg.validate();
    const auto format = cp::parse_line_format(output_format);
    const cp::ModelFactory models(model.spec());
    const bool needs_ref = models.spec().needs_reference();

    std::vector<std::vector<std::string>> docs;
    std::vector<cp::LabeledSequence> refs;
    if (!input.empty()) docs = read_documents(input);
    if (!model.reference.empty() && (needs_ref || input.empty())) {
      refs = model.load_reference(input.empty() ? nullptr : &docs);
    } else if (needs_ref) {
      throw cp::ConfigError("model '" + model.model + "' needs --reference");
    }
    if (input.empty()) {
      if (refs.empty() && model.reference.empty()) throw cp::ConfigError("restore needs --input, --chunks or --reference");
      for (const auto& r : refs) docs.push_back(cp::words_of(r));
    }

    Output out(output);
    for (std::size_t d = 0; d < docs.size(); ++d) {
      const auto restorer = models.for_document(needs_ref ? &refs[d] : nullptr, pcfg.chunk);
      out.line(cp::render(cp::restore_document(docs[d], *restorer, pcfg), format));
    }
    out.close();
    return kOk;
  }

  int run_chunks() const {
    if (index.empty()) throw cp::ConfigError("--chunks needs --index");
    const auto cfg = chunk.config();
    if (workers == 0) throw cp::ConfigError("worker count must be at least 1");
    const auto format = cp::parse_line_format(output_format);
    const cp::ModelFactory models(model.spec());
    const bool needs_ref = models.spec().needs_reference();

    const auto lines = read_lines(chunks);
    const auto rows = read_index(index);
    check_chunk_lines(lines.size(), rows.size());
    const auto docs = group_documents(rows);

    std::vector<cp::LabeledSequence> refs;
    if (needs_ref) {
      if (model.reference.empty()) throw cp::ConfigError("model '" + model.model + "' needs --reference");
      if (cp::parse_line_format(model.reference_format) == cp::LineFormat::Encoded) {
        throw cp::ConfigError("chunk mode takes a plain reference");
      }
      refs = model.load_reference(nullptr);
      if (refs.size() != docs.size()) {
        throw cp::MismatchError("reference has " + std::to_string(refs.size()) +
                                " documents, index describes " + std::to_string(docs.size()));
      }
    }

    Output out(output);
    for (std::size_t d = 0; d < docs.size(); ++d) {
      std::vector<cp::Chunk> doc_chunks;
      for (std::size_t i = 0; i < docs[d].rows.size(); ++i) {
        const auto& row = docs[d].rows[i];
        auto words = cp::split_words(lines[docs[d].first_line + i]);
        if (words.size() != row.len) {
          throw cp::LengthMismatch(row.len, words.size(),
                                   "chunk line " + std::to_string(docs[d].first_line + i + 1));
        }
        doc_chunks.push_back({row.index, row.start, std::move(words)});
      }
      if (docs[d].words() == 0) {
        for (std::size_t i = 0; i < doc_chunks.size(); ++i) out.line("");
        continue;
      }
      std::shared_ptr<const cp::Restorer> restorer;
      if (needs_ref) {
        std::vector<cp::LabeledSequence> ref_chunks;
        for (const auto& c : doc_chunks) {
          if (c.end() > refs[d].size()) {
            throw cp::MismatchError("reference document " + std::to_string(d + 1) +
                                    " is shorter than its chunks");
          }
          if (c.index != ref_chunks.size()) throw cp::MissingChunk(ref_chunks.size());
          ref_chunks.emplace_back(refs[d].begin() + c.start, refs[d].begin() + c.end());
        }
        restorer = models.for_chunks(std::move(ref_chunks));
      } else {
        restorer = models.for_document(nullptr, cfg);
      }
      for (const auto& r : cp::restore_chunks(doc_chunks, *restorer, workers)) {
        out.line(cp::render(r.labels, format));
      }
    }
    out.close();
    return kOk;
  }
};

struct MergeCmd {
  std::string chunks, index, output = "-", format = "plain", output_format, input_chunks;
  ChunkArgs chunk;
  MergeArgs merge;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("merge", "Merge restored chunk lines back into documents");
    cmd->add_option("--chunks", chunks, "Restored chunk lines")->required();
    cmd->add_option("--index", index, "Sidecar index written by split")->required();
    cmd->add_option("--output,-o", output, "One line per document")->capture_default_str();
    cmd->add_option("--format", format, "Format of the restored chunks: plain | encoded")->capture_default_str();
    cmd->add_option("--output-format", output_format, "plain | encoded (default: --format)");
    cmd->add_option("--input-chunks", input_chunks, "Unrestored chunk lines (needed for encoded chunks)");
    chunk.add(cmd);
    merge.add(cmd);
  }

  int run() const {
    const auto cfg = chunk.config();
    const auto mcfg = merge.config(cfg);
    const auto in_format = cp::parse_line_format(format);
    const auto out_format = output_format.empty() ? in_format : cp::parse_line_format(output_format);
    const auto lines = read_lines(chunks);
    const auto rows = read_index(index);
    check_chunk_lines(lines.size(), rows.size());
    std::vector<std::string> word_lines;
    if (in_format == cp::LineFormat::Encoded) {
      if (input_chunks.empty()) throw cp::ConfigError("encoded chunks need --input-chunks for their words");
      word_lines = read_lines(input_chunks);
      check_chunk_lines(word_lines.size(), rows.size());
    }

    Output out(output);
    for (const auto& doc : group_documents(rows)) {
      if (doc.words() == 0) {
        out.line("");
        continue;
      }
      cp::StreamMerger merger(cfg, mcfg, doc.words());
      for (std::size_t i = 0; i < doc.rows.size(); ++i) {
        const std::size_t line = doc.first_line + i;
        const auto& row = doc.rows[i];
        cp::LabeledSequence labels;
        try {
          labels = in_format == cp::LineFormat::Plain
                       ? cp::parse_plain(lines[line])
                       : cp::decode(lines[line], cp::split_words(word_lines[line]));
        } catch (const cp::FormatError& e) {
          throw cp::FormatError("chunk line " + std::to_string(line + 1) + ": " + e.what());
        }
        if (labels.size() != row.len) {
          throw cp::LengthMismatch(row.len, labels.size(), "chunk line " + std::to_string(line + 1));
        }
        cp::Chunk c{row.index, row.start, cp::words_of(labels)};
        merger.push({std::move(c), std::move(labels)});
      }
      out.line(cp::render(std::move(merger).finish(), out_format));
    }
    out.close();
    return kOk;
  }
};

struct EvaluateCmd {
  std::string ref, hyp, format = "plain", report = "json", output = "-";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("evaluate", "Score hypothesis lines against reference lines");
    cmd->add_option("--ref", ref, "Reference lines")->required();
    cmd->add_option("--hyp", hyp, "Hypothesis lines")->required();
    cmd->add_option("--format", format, "plain | encoded")->capture_default_str();
    cmd->add_option("--report", report, "json | tsv")->capture_default_str();
    cmd->add_option("--output,-o", output, "Report")->capture_default_str();
  }

  int run() const {
    const auto fmt = cp::parse_line_format(format);
    if (report != "json" && report != "tsv") throw cp::ConfigError("unknown report format '" + report + "'");
    const auto ref_lines = read_lines(ref);
    const auto hyp_lines = read_lines(hyp);
    if (ref_lines.size() != hyp_lines.size()) {
      throw cp::LengthMismatch(ref_lines.size(), hyp_lines.size(), "line count");
    }
    auto parse = [fmt](const std::string& line) {
      if (fmt == cp::LineFormat::Plain) return cp::parse_plain(line);
      const auto labels = cp::parse_encoded(line);
      cp::LabeledSequence seq;
      for (const auto& [c, p] : labels) seq.push_back({"", c, p});
      return seq;
    };
    cp::ConfusionMatrix cm;
    for (std::size_t i = 0; i < ref_lines.size(); ++i) {
      const std::string where = "line " + std::to_string(i + 1) + ": ";
      cp::LabeledSequence r, h;
      try {
        r = parse(ref_lines[i]);
        h = parse(hyp_lines[i]);
      } catch (const cp::FormatError& e) {
        throw cp::FormatError(where + e.what());
      }
      try {
        cp::accumulate(cm, r, h);
      } catch (const cp::MismatchError& e) {
        throw cp::MismatchError(where + e.what());
      }
    }
    const auto metrics = cp::report_from(cm);
    Output out(output);
    if (report == "json") {
      out.line(cp::report_json(metrics, cm).dump(2));
    } else {
      out.stream() << cp::report_tsv(metrics);
    }
    out.close();
    return kOk;
  }
};

std::vector<std::size_t> parse_cuts(const std::string& text, std::size_t overlap) {
  if (text.empty()) {
    std::vector<std::size_t> all;
    for (std::size_t m = 0; m <= overlap; ++m) all.push_back(m);
    return all;
  }
  std::vector<std::size_t> cuts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        cuts.push_back(parse_count(item, "--min-words-cut"));
      } else {
        const auto lo = parse_count(item.substr(0, dots), "--min-words-cut");
        const auto hi = parse_count(item.substr(dots + 2), "--min-words-cut");
        if (lo > hi) throw cp::ConfigError("empty range '" + item + "'");
        for (std::size_t m = lo; m <= hi; ++m) cuts.push_back(m);
      }
    } catch (const cp::FormatError& e) {
      throw cp::ConfigError(e.what());
    }
  }
  return cuts;
}

struct SweepCmd {
  std::string input, output = "-", cuts;
  ChunkArgs chunk;
  ModelArgs model;
  std::size_t workers = 1;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("sweep", "Score the pipeline for a range of min_words_cut values");
    cmd->add_option("--ref,--reference", model.reference, "Reference documents, one per line")->required();
    cmd->add_option("--input,-i", input, "Word documents (needed for an encoded reference)");
    cmd->add_option("--min-words-cut,-m", cuts, "Values to try: 'a..b' or a comma list (default: 0..overlap)");
    cmd->add_option("--output,-o", output, "TSV: m, class, precision, recall, f1")->capture_default_str();
    cmd->add_option("--workers,-j", workers, "Restoration threads")->capture_default_str();
    chunk.add(cmd);
    auto* m = cmd->add_option("--model", model.model, "oracle | noise | baseline | external");
    m->capture_default_str();
    cmd->add_option("--reference-format", model.reference_format, "plain | encoded")->capture_default_str();
    cmd->add_option("--boundary-width", model.boundary_width, "Noise model: edge width b")->capture_default_str();
    cmd->add_option("--noise-prob", model.noise_prob, "Noise model: corruption probability p")
        ->capture_default_str();
    cmd->add_option("--seed", model.seed, "Noise model: random seed")->capture_default_str();
    cmd->add_option("--table", model.table, "Baseline model: table written by train-baseline");
    cmd->add_option("--model-cmd", model.model_cmd, "External model: shell command");
    cmd->add_option("--model-format", model.model_format, "External model output: plain | encoded")
        ->capture_default_str();
    cmd->add_option("--batch-size", model.batch_size, "External model: chunks per batch")->capture_default_str();
    cmd->add_option("--timeout-ms", model.timeout_ms, "External model: per-batch timeout")->capture_default_str();
  }

  int run() const {
    const auto cfg = chunk.config();
    if (workers == 0) throw cp::ConfigError("worker count must be at least 1");
    const auto values = parse_cuts(cuts, cfg.overlap);
    const cp::ModelFactory models(model.spec());
    std::vector<std::vector<std::string>> docs;
    if (!input.empty()) docs = read_documents(input);
    const auto refs = model.load_reference(input.empty() ? nullptr : &docs);
    Output out(output);
    out.stream() << cp::sweep_tsv(cp::sweep(refs, models, cfg, values, workers));
    out.close();
    return kOk;
  }
};

struct TrainCmd {
  std::string input, output = "-", format = "plain";

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("train-baseline", "Count case and punctuation statistics from pair TSV");
    cmd->add_option("--input,-i", input, "Pair TSV written by prepare")->required();
    cmd->add_option("--output,-o", output, "Baseline table")->capture_default_str();
    cmd->add_option("--format", format, "Target format of the pairs: plain | encoded")->capture_default_str();
  }

  int run() const {
    const auto fmt = cp::parse_line_format(format);
    std::vector<cp::ChunkPair> pairs;
    const auto lines = read_lines(input);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (lines[i].empty()) continue;
      const auto tab = lines[i].find('\t');
      if (tab == std::string::npos) {
        throw cp::FormatError("pair line " + std::to_string(i + 1) + ": missing tab");
      }
      pairs.push_back({lines[i].substr(0, tab), lines[i].substr(tab + 1)});
    }
    const auto table = cp::train_baseline(pairs, fmt);
    Output out(output);
    table.save(out.stream());
    out.close();
    return kOk;
  }
};

cp::MetricsReport load_report(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_all(path));
  } catch (const nlohmann::json::exception& e) {
    throw cp::FormatError("'" + path + "': " + e.what());
  }
  cp::MetricsReport r;
  try {
    for (cp::Slot s : cp::kSlots) {
      const auto name = std::string(cp::slot_name(s));
      if (!j.at("classes").contains(name)) continue;
      const auto& c = j["classes"][name];
      r[s] = {c.at("precision").get<double>(), c.at("recall").get<double>(), c.at("f1").get<double>(),
              c.value("support", std::uint64_t{0})};
    }
  } catch (const nlohmann::json::exception& e) {
    throw cp::FormatError("'" + path + "': not an evaluate report (" + e.what() + ")");
  }
  r.summarize();
  return r;
}

struct CompareCmd {
  std::string a, b, name_a = "A", name_b = "B", output = "-";
  bool all_classes = false;

  void add(CLI::App& app) {
    auto* cmd = app.add_subcommand("compare", "Side-by-side table of two evaluate JSON reports with deltas");
    cmd->add_option("a", a, "First report")->required();
    cmd->add_option("b", b, "Second report")->required();
    cmd->add_option("--name-a", name_a, "Label for the first report")->capture_default_str();
    cmd->add_option("--name-b", name_b, "Label for the second report")->capture_default_str();
    cmd->add_flag("--all-classes", all_classes, "Also show L and $");
    cmd->add_option("--output,-o", output, "Table")->capture_default_str();
  }

  int run() const {
    const auto table = cp::compare(load_report(a), load_report(b), all_classes);
    Output out(output);
    out.stream() << cp::format_compare(table, name_a, name_b);
    out.close();
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"Chunked case and punctuation restoration"};
  app.require_subcommand(1);

  PrepareCmd prepare;
  SplitCmd split;
  RestoreCmd restore;
  MergeCmd merge;
  EvaluateCmd evaluate;
  SweepCmd sweep;
  TrainCmd train;
  CompareCmd compare;
  prepare.add(app);
  split.add(app);
  restore.add(app);
  merge.add(app);
  evaluate.add(app);
  sweep.add(app);
  train.add(app);
  compare.add(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (app.got_subcommand("prepare")) return prepare.run();
    if (app.got_subcommand("split")) return split.run();
    if (app.got_subcommand("restore")) return restore.run();
    if (app.got_subcommand("merge")) return merge.run();
    if (app.got_subcommand("evaluate")) return evaluate.run();
    if (app.got_subcommand("sweep")) return sweep.run();
    if (app.got_subcommand("train-baseline")) return train.run();
    if (app.got_subcommand("compare")) return compare.run();
  } catch (const cp::ConfigError& e) {
    std::cerr << "chunkpunct: configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const cp::IoError& e) {
    std::cerr << "chunkpunct: I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const cp::FormatError& e) {
    std::cerr << "chunkpunct: input error: " << e.what() << '\n';
    return kIo;
  } catch (const cp::ModelError& e) {
    std::cerr << "chunkpunct: model error: " << e.what() << '\n';
    return kModel;
  } catch (const cp::MismatchError& e) {
    std::cerr << "chunkpunct: mismatch: " << e.what() << '\n';
    return kMismatch;
  } catch (const std::exception& e) {
    std::cerr << "chunkpunct: " << e.what() << '\n';
    return kOther;
  }
  return kOther;
}
