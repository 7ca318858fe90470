#pragma once

// split -> parallel restore -> merge, plus the min_words_cut sweep.

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <exception>
#include <fstream>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include "chunkpunct/chunker.hpp"
#include "chunkpunct/error.hpp"
#include "chunkpunct/eval.hpp"
#include "chunkpunct/external.hpp"
#include "chunkpunct/merger.hpp"
#include "chunkpunct/models.hpp"

namespace chunkpunct {

/// Which model to run and its parameters.
struct RestorerSpec {
  enum class Kind { Oracle, BoundaryNoise, Baseline, External };

  Kind kind = Kind::Oracle;
  // BoundaryNoise
  std::size_t boundary_width = 3;
  double probability = 1.0;
  std::uint64_t seed = 0;
  // Baseline: either a loaded table or a path to load from
  std::shared_ptr<const BaselineTable> table;
  std::string table_path;
  // External
  ExternalOptions external;

  bool needs_reference() const { return kind == Kind::Oracle || kind == Kind::BoundaryNoise; }

  void validate() const {
    switch (kind) {
      case Kind::Oracle: break;
      case Kind::BoundaryNoise:
        if (!(probability >= 0.0 && probability <= 1.0)) {
          throw ConfigError("noise probability must be in [0, 1]");
        }
        break;
      case Kind::Baseline:
        if (!table && table_path.empty()) throw ConfigError("baseline model needs a table");
        break;
      case Kind::External: external.validate(); break;
    }
  }

  static Kind parse_kind(std::string_view s) {
    if (s == "oracle") return Kind::Oracle;
    if (s == "noise" || s == "boundary-noise") return Kind::BoundaryNoise;
    if (s == "baseline") return Kind::Baseline;
    if (s == "external") return Kind::External;
    throw ConfigError("unknown model '" + std::string(s) +
                      "' (expected oracle, noise, baseline or external)");
  }
};

/// Hands out a restorer per document. Document-independent models (baseline,
/// external) are created once and shared.
class ModelFactory {
 public:
  explicit ModelFactory(RestorerSpec spec) : spec_(std::move(spec)) {
    spec_.validate();
    if (spec_.kind == RestorerSpec::Kind::Baseline) {
      if (!spec_.table) {
        std::ifstream in(spec_.table_path);
        if (!in) throw IoError("cannot open baseline table '" + spec_.table_path + "'");
        spec_.table = std::make_shared<const BaselineTable>(BaselineTable::load(in));
      }
      shared_ = std::make_shared<BaselineRestorer>(spec_.table);
    } else if (spec_.kind == RestorerSpec::Kind::External) {
      shared_ = std::make_shared<ExternalRestorer>(spec_.external);
    }
  }

  const RestorerSpec& spec() const { return spec_; }

  /// `reference` is required for oracle and noise models.
  std::shared_ptr<const Restorer> for_document(const LabeledSequence* reference,
                                               const ChunkConfig& cfg) const {
    if (shared_) return shared_;
    if (!reference) throw ConfigError("the oracle and noise models need a reference");
    auto oracle = OracleRestorer::from_document(*reference, cfg);
    if (spec_.kind == RestorerSpec::Kind::Oracle) {
      return std::make_shared<OracleRestorer>(std::move(oracle));
    }
    return std::make_shared<BoundaryNoiseRestorer>(std::move(oracle), spec_.boundary_width,
                                                   spec_.probability, spec_.seed);
  }

  /// Chunk-file variant: the oracle is keyed by chunk index.
  std::shared_ptr<const Restorer> for_chunks(std::vector<LabeledSequence> reference_chunks) const {
    if (shared_) return shared_;
    OracleRestorer oracle(std::move(reference_chunks));
    if (spec_.kind == RestorerSpec::Kind::Oracle) {
      return std::make_shared<OracleRestorer>(std::move(oracle));
    }
    return std::make_shared<BoundaryNoiseRestorer>(std::move(oracle), spec_.boundary_width,
                                                   spec_.probability, spec_.seed);
  }

 private:
  RestorerSpec spec_;
  std::shared_ptr<const Restorer> shared_;
};

struct PipelineConfig {
  ChunkConfig chunk{30, 15};
  MergeConfig merge{7};
  std::size_t workers = 1;

  void validate() const {
    chunk.validate();
    merge.validate(chunk);
    if (workers == 0) throw ConfigError("worker count must be at least 1");
  }
};

/// Restores every chunk on `workers` threads and hands each result to
/// `sink(position, result)` on the calling thread, in completion order. Work is claimed in batches of
/// `model.batch_size()` consecutive chunks.
template <typename Sink>
void restore_parallel(std::span<const Chunk> chunks, const Restorer& model, std::size_t workers,
                      Sink&& sink) {
  const std::size_t batch = std::max<std::size_t>(1, model.batch_size());
  const std::size_t batches = (chunks.size() + batch - 1) / batch;
  auto run_batch = [&](std::size_t b) {
    const std::size_t begin = b * batch;
    const auto span = chunks.subspan(begin, std::min(batch, chunks.size() - begin));
    auto labels = model.restore_batch(span);
    if (labels.size() != span.size()) throw LengthMismatch(span.size(), labels.size(), "model batch");
    std::vector<std::pair<std::size_t, ChunkResult>> out;
    out.reserve(span.size());
    for (std::size_t i = 0; i < span.size(); ++i) {
      out.emplace_back(begin + i, ChunkResult{span[i], std::move(labels[i])});
    }
    return out;
  };
  if (workers <= 1 || batches <= 1) {
    for (std::size_t b = 0; b < batches; ++b) {
      for (auto& [pos, r] : run_batch(b)) sink(pos, std::move(r));
    }
    return;
  }

  std::mutex mu;
  std::condition_variable ready;
  std::deque<std::pair<std::size_t, ChunkResult>> queue;
  std::exception_ptr error;
  std::atomic<std::size_t> next_batch{0};
  std::atomic<bool> stop{false};
  std::size_t finished_workers = 0;
  const std::size_t n_threads = std::min(workers, batches);

  auto worker = [&] {
    try {
      for (std::size_t b = next_batch++; b < batches && !stop; b = next_batch++) {
        auto results = run_batch(b);
        std::lock_guard lock(mu);
        for (auto& r : results) queue.push_back(std::move(r));
        ready.notify_one();
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!error) error = std::current_exception();
      stop = true;
    }
    std::lock_guard lock(mu);
    ++finished_workers;
    ready.notify_one();
  };

  std::vector<std::jthread> threads;
  threads.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);

  std::exception_ptr sink_error;
  for (;;) {
    std::unique_lock lock(mu);
    ready.wait(lock, [&] { return !queue.empty() || finished_workers == n_threads; });
    if (queue.empty()) break;
    auto [pos, r] = std::move(queue.front());
    queue.pop_front();
    lock.unlock();
    if (sink_error) continue;
    try {
      sink(pos, std::move(r));
    } catch (...) {
      sink_error = std::current_exception();
      stop = true;
    }
  }
  threads.clear();
  if (error) std::rethrow_exception(error);
  if (sink_error) std::rethrow_exception(sink_error);
}

/// Restored chunks in index order.
inline std::vector<ChunkResult> restore_chunks(std::span<const Chunk> chunks, const Restorer& model,
                                               std::size_t workers = 1) {
  std::vector<std::optional<ChunkResult>> slots(chunks.size());
  restore_parallel(chunks, model, workers,
                   [&](std::size_t pos, ChunkResult r) { slots[pos] = std::move(r); });
  std::vector<ChunkResult> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// One document through split, restore and min_words_cut merge.
inline LabeledSequence restore_document(std::span<const std::string> words, const Restorer& model,
                                        const PipelineConfig& cfg) {
  cfg.validate();
  const auto chunks = split(words, cfg.chunk);
  StreamMerger merger(cfg.chunk, cfg.merge, words.size());
  restore_parallel(chunks, model, cfg.workers, [&](std::size_t, ChunkResult r) { merger.push(std::move(r)); });
  return std::move(merger).finish();
}

struct SweepEntry {
  std::size_t min_words_cut;
  MetricsReport report;
  ConfusionMatrix confusion;
};

/// Entries sorted by min_words_cut, one per distinct value.
using SweepReport = std::vector<SweepEntry>;

/// Scores split -> restore -> merge(m) over every reference document for each
/// m. Counts are pooled across documents before computing metrics.
/// Restoration does not depend on m, so each document is restored once.
inline SweepReport sweep(std::span<const LabeledSequence> references, const ModelFactory& models,
                         const ChunkConfig& cfg, std::vector<std::size_t> cuts,
                         std::size_t workers = 1) {
  cfg.validate();
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (auto m : cuts) MergeConfig{m}.validate(cfg);
  std::vector<ConfusionMatrix> pooled(cuts.size());
  for (std::size_t d = 0; d < references.size(); ++d) {
    const auto& ref = references[d];
    if (ref.empty()) continue;
    const auto words = words_of(ref);
    const auto chunks = split(words, cfg);
    std::vector<ChunkResult> restored;
    try {
      restored = restore_chunks(chunks, *models.for_document(&ref, cfg), workers);
    } catch (const Error& e) {
      throw ModelError("document " + std::to_string(d) + ": " + e.what());
    }
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      try {
        accumulate(pooled[k], ref, merge(restored, cfg, MergeConfig{cuts[k]}));
      } catch (const MismatchError& e) {
        throw MismatchError("document " + std::to_string(d) + ", min_words_cut " +
                            std::to_string(cuts[k]) + ": " + e.what());
      }
    }
  }
  SweepReport report;
  report.reserve(cuts.size());
  for (std::size_t k = 0; k < cuts.size(); ++k) {
    report.push_back({cuts[k], report_from(pooled[k]), pooled[k]});
  }
  return report;
}

}  // namespace chunkpunct
