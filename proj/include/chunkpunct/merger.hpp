#pragma once

// Overlapped-chunk merging.
//
// For consecutive chunks A and B sharing v words, min_words_cut m (clamped to
// v) removes the last m tokens of A and keeps B from local position v - m.
// m = 0 keeps all of A's overlap, m = v keeps all of B's. Document edges are
// never trimmed.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chunkpunct/chunker.hpp"
#include "chunkpunct/error.hpp"
#include "chunkpunct/labels.hpp"

namespace chunkpunct {

struct MergeConfig {
  std::size_t min_words_cut = 7;

  void validate(const ChunkConfig& cfg) const {
    if (min_words_cut > cfg.overlap) {
      throw ConfigError("min_words_cut " + std::to_string(min_words_cut) + " exceeds overlap " +
                        std::to_string(cfg.overlap));
    }
  }
};

/// A restored chunk, tagged with the chunk it came from.
struct ChunkResult {
  Chunk chunk;
  LabeledSequence labels;
};

/// Repairs a model output whose length or words drift from the chunk.
/// Matches words by longest common subsequence; matched positions keep the
/// model's labels, unmatched ones get punct None and the case of the nearest
/// matched model token on their left (L if there is none).
inline LabeledSequence align(std::span<const std::string> words, const LabeledSequence& output) {
  const std::size_t n = words.size();
  const std::size_t m = output.size();
  if (n == m) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = words[i] == output[i].word;
    if (same) return output;
  }
  // lcs[i][j]: LCS length of words[i..] and output[j..]
  std::vector<std::uint32_t> lcs((n + 1) * (m + 1), 0);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return lcs[i * (m + 1) + j]; };
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      at(i, j) = words[i] == output[j].word ? at(i + 1, j + 1) + 1
                                            : std::max(at(i + 1, j), at(i, j + 1));
    }
  }
  LabeledSequence aligned;
  aligned.reserve(n);
  std::optional<CaseLabel> left_case;
  std::size_t i = 0, j = 0;
  while (i < n) {
    if (j < m && words[i] == output[j].word && at(i, j) == at(i + 1, j + 1) + 1) {
      aligned.push_back(Token{words[i], output[j].case_label, output[j].punct});
      left_case = output[j].case_label;
      ++i;
      ++j;
    } else if (j < m && at(i, j + 1) >= at(i + 1, j)) {
      ++j;  // model insertion
    } else {
      aligned.push_back(Token{words[i], left_case.value_or(CaseLabel::Lower), PunctLabel::None});
      ++i;
    }
  }
  return aligned;
}

/// Local token range [begin, end) that chunk `chunk_index` contributes.
struct Contribution {
  std::size_t chunk_index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;

  friend bool operator==(const Contribution&, const Contribution&) = default;
};

/// The selection rule as a function of chunk geometry only. `starts` and
/// `lengths` describe consecutive split-consistent chunks.
inline std::vector<Contribution> contribution_plan(std::span<const std::size_t> starts,
                                                   std::span<const std::size_t> lengths,
                                                   const ChunkConfig& cfg, const MergeConfig& mcfg) {
  std::vector<Contribution> plan(starts.size());
  for (std::size_t i = 0; i < plan.size(); ++i) plan[i] = {i, 0, lengths[i]};
  for (std::size_t i = 0; i + 1 < plan.size(); ++i) {
    const std::size_t shared = starts[i] + lengths[i] - starts[i + 1];
    const std::size_t v = std::min(cfg.overlap, lengths[i + 1]);
    if (shared != v) {
      throw MismatchError("chunks " + std::to_string(i) + " and " + std::to_string(i + 1) +
                          " share " + std::to_string(shared) + " words, expected " +
                          std::to_string(v));
    }
    const std::size_t cut = std::min(mcfg.min_words_cut, v);
    plan[i].end = lengths[i] - cut;
    plan[i + 1].begin = v - cut;
  }
  return plan;
}

namespace detail {

inline void check_pair(const ChunkResult& a, const ChunkResult& b) {
  for (std::size_t g = b.chunk.start; g < a.chunk.end(); ++g) {
    if (a.chunk.words[g - a.chunk.start] != b.chunk.words[g - b.chunk.start]) {
      throw OverlapMismatch(a.chunk.index, g);
    }
  }
}

inline void check_labels(const ChunkResult& r) {
  if (r.labels.size() != r.chunk.words.size()) {
    throw LengthMismatch(r.chunk.words.size(), r.labels.size(),
                         "chunk " + std::to_string(r.chunk.index));
  }
}

inline void append_range(LabeledSequence& out, const ChunkResult& r, std::size_t begin,
                         std::size_t end) {
  for (std::size_t p = begin; p < end; ++p) {
    out.push_back(Token{r.chunk.words[p], r.labels[p].case_label, r.labels[p].punct});
  }
}

}  // namespace detail

/// Merges results given in chunk-index order. Output words are the chunk
/// words; labels are selected positionally, never blended. Linear in the
/// number of words.
inline LabeledSequence merge(std::span<const ChunkResult> results, const ChunkConfig& cfg,
                             const MergeConfig& mcfg) {
  cfg.validate();
  mcfg.validate(cfg);
  std::vector<std::size_t> starts, lengths;
  starts.reserve(results.size());
  lengths.reserve(results.size());
  std::size_t total = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.chunk.index > i) throw MissingChunk(i);
    if (r.chunk.index < i || r.chunk.start != i * cfg.stride()) {
      throw MismatchError("chunk at position " + std::to_string(i) +
                          " is not split-consistent (index " + std::to_string(r.chunk.index) +
                          ", start " + std::to_string(r.chunk.start) + ")");
    }
    detail::check_labels(r);
    if (i > 0) detail::check_pair(results[i - 1], r);
    starts.push_back(r.chunk.start);
    lengths.push_back(r.chunk.words.size());
    total = r.chunk.end();
  }
  const auto plan = contribution_plan(starts, lengths, cfg, mcfg);
  LabeledSequence out;
  out.reserve(total);
  for (const auto& c : plan) detail::append_range(out, results[c.chunk_index], c.begin, c.end);
  return out;
}

/// Incremental merge for results arriving in any order. Holds back only the
/// results that are ahead of the next expected index, plus the tail of the
/// latest in-order chunk until its successor is known.
class StreamMerger {
 public:
  StreamMerger(ChunkConfig cfg, MergeConfig mcfg, std::optional<std::size_t> total_words = {})
      : cfg_(cfg), mcfg_(mcfg), total_words_(total_words) {
    cfg_.validate();
    mcfg_.validate(cfg_);
    if (total_words_) out_.reserve(*total_words_);
  }

  void push(ChunkResult result) {
    const std::size_t index = result.chunk.index;
    if (index < next_index_ || waiting_.contains(index)) {
      throw MismatchError("duplicate chunk " + std::to_string(index));
    }
    detail::check_labels(result);
    waiting_.emplace(index, std::move(result));
    for (auto it = waiting_.find(next_index_); it != waiting_.end(); it = waiting_.find(next_index_)) {
      ChunkResult next = std::move(it->second);
      waiting_.erase(it);
      accept(std::move(next));
    }
  }

  /// Number of results buffered out of order.
  std::size_t buffered() const { return waiting_.size(); }

  LabeledSequence finish() && {
    if (!waiting_.empty()) throw MissingChunk(next_index_);
    if (total_words_ && next_index_ < chunk_count(*total_words_, cfg_)) throw MissingChunk(next_index_);
    if (pending_) detail::append_range(out_, *pending_, begin_, pending_->chunk.words.size());
    if (total_words_ && out_.size() != *total_words_) {
      throw LengthMismatch(*total_words_, out_.size(), "merged document");
    }
    return std::move(out_);
  }

 private:
  void accept(ChunkResult r) {
    if (r.chunk.start != r.chunk.index * cfg_.stride()) {
      throw MismatchError("chunk " + std::to_string(r.chunk.index) + " starts at " +
                          std::to_string(r.chunk.start) + ", expected " +
                          std::to_string(r.chunk.index * cfg_.stride()));
    }
    if (pending_) {
      detail::check_pair(*pending_, r);
      const std::size_t shared = pending_->chunk.end() - r.chunk.start;
      const std::size_t v = std::min(cfg_.overlap, r.chunk.words.size());
      if (pending_->chunk.end() < r.chunk.start || shared != v) {
        throw MismatchError("chunks " + std::to_string(pending_->chunk.index) + " and " +
                            std::to_string(r.chunk.index) + " do not overlap by " +
                            std::to_string(v) + " words");
      }
      const std::size_t cut = std::min(mcfg_.min_words_cut, v);
      detail::append_range(out_, *pending_, begin_, pending_->chunk.words.size() - cut);
      begin_ = v - cut;
    } else {
      begin_ = 0;
    }
    pending_ = std::move(r);
    ++next_index_;
  }

  ChunkConfig cfg_;
  MergeConfig mcfg_;
  std::optional<std::size_t> total_words_;
  std::map<std::size_t, ChunkResult> waiting_;
  std::optional<ChunkResult> pending_;
  std::size_t begin_ = 0;
  std::size_t next_index_ = 0;
  LabeledSequence out_;
};

/// Feeds `arrivals` (any order) through a StreamMerger.
inline LabeledSequence merge_stream(std::span<const ChunkResult> arrivals, const ChunkConfig& cfg,
                                    const MergeConfig& mcfg,
                                    std::optional<std::size_t> total_words = {}) {
  StreamMerger merger(cfg, mcfg, total_words);
  for (const auto& r : arrivals) merger.push(r);
  return std::move(merger).finish();
}

}  // namespace chunkpunct
