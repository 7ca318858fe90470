#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chunkpunct/error.hpp"

namespace chunkpunct {

/// Chunk size k and the number of words shared by consecutive chunks.
/// Stride is k - overlap.
struct ChunkConfig {
  std::size_t chunk_size = 30;
  std::size_t overlap = 15;

  static ChunkConfig with_default_overlap(std::size_t k) { return {k, k / 2}; }

  std::size_t stride() const { return chunk_size - overlap; }

  void validate() const {
    if (chunk_size < 2) {
      throw ConfigError("chunk size must be at least 2 (got " + std::to_string(chunk_size) + ")");
    }
    if (overlap >= chunk_size) {
      throw ConfigError("overlap " + std::to_string(overlap) + " must be smaller than chunk size " +
                        std::to_string(chunk_size));
    }
  }
};

struct Chunk {
  std::size_t index = 0;
  std::size_t start = 0;  // global word offset
  std::vector<std::string> words;

  std::size_t end() const { return start + words.size(); }
  friend bool operator==(const Chunk&, const Chunk&) = default;
};

/// Number of chunks `split` produces for `n` words.
inline std::size_t chunk_count(std::size_t n, const ChunkConfig& cfg) {
  if (n == 0) return 0;
  if (n <= cfg.chunk_size) return 1;
  const std::size_t s = cfg.stride();
  return (n - cfg.chunk_size + s - 1) / s + 1;
}

/// Windows [i*s, i*s + k) clipped to the input. A window is only emitted while
/// the previous one leaves words uncovered, so the tail chunk is always longer
/// than the overlap.
inline std::vector<Chunk> split(std::span<const std::string> words, const ChunkConfig& cfg) {
  cfg.validate();
  std::vector<Chunk> chunks;
  const std::size_t n = words.size();
  if (n == 0) return chunks;
  chunks.reserve(chunk_count(n, cfg));
  const std::size_t s = cfg.stride();
  for (std::size_t start = 0, index = 0;; start += s, ++index) {
    const std::size_t end = std::min(start + cfg.chunk_size, n);
    chunks.push_back(Chunk{index, start, {words.begin() + start, words.begin() + end}});
    if (end == n) break;
  }
  return chunks;
}

struct CoverageIssue {
  enum class Kind {
    Empty,            // chunks given for an empty document, or none for a non-empty one
    BadIndex,         // index/start/length inconsistent with the config
    Gap,              // chunk(s) missing; [begin, end) are the missing start offsets
    OverlapMismatch,  // shared words differ; begin is the global position
    ShortTail,        // a chunk fully contained in its predecessor
    Incomplete,       // coverage ends before n or runs past it
  };
  Kind kind;
  std::size_t chunk_index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::string message;
};

/// Verifies that `chunks` is exactly what `split` would produce for an
/// n-word document (up to the words, which must agree on every overlap).
/// Returns the first violation.
inline std::optional<CoverageIssue> coverage_check(std::span<const Chunk> chunks, std::size_t n,
                                                   const ChunkConfig& cfg) {
  using Kind = CoverageIssue::Kind;
  if (n == 0 || chunks.empty()) {
    if (n == 0 && chunks.empty()) return std::nullopt;
    return CoverageIssue{Kind::Empty, 0, 0, n, n == 0 ? "chunks for an empty document" : "no chunks"};
  }
  const std::size_t s = cfg.stride();
  for (std::size_t i = 0; i < chunks.size(); ++i) {
    const Chunk& c = chunks[i];
    const std::size_t expected_index = i == 0 ? 0 : chunks[i - 1].index + 1;
    if (c.index > expected_index) {
      return CoverageIssue{Kind::Gap, expected_index, expected_index * s, c.index * s,
                           "missing chunk(s) " + std::to_string(expected_index) + ".." +
                               std::to_string(c.index - 1)};
    }
    if (c.index != expected_index || c.start != c.index * s || c.words.empty() ||
        c.words.size() > cfg.chunk_size) {
      return CoverageIssue{Kind::BadIndex, c.index, c.start, c.end(),
                           "chunk " + std::to_string(c.index) + " has inconsistent index/start/length"};
    }
    if (i > 0) {
      const Chunk& prev = chunks[i - 1];
      if (prev.words.size() != cfg.chunk_size) {
        return CoverageIssue{Kind::BadIndex, prev.index, prev.start, prev.end(),
                             "only the last chunk may be shorter than the chunk size"};
      }
      if (c.end() <= prev.end()) {
        return CoverageIssue{Kind::ShortTail, c.index, c.start, c.end(),
                             "chunk " + std::to_string(c.index) + " adds no new words"};
      }
      for (std::size_t g = c.start; g < prev.end(); ++g) {
        if (prev.words[g - prev.start] != c.words[g - c.start]) {
          return CoverageIssue{Kind::OverlapMismatch, prev.index, g, g + 1,
                               "overlap words differ at position " + std::to_string(g)};
        }
      }
    }
  }
  if (chunks.back().end() != n) {
    return CoverageIssue{Kind::Incomplete, chunks.back().index, chunks.back().end(), n,
                         "chunks cover " + std::to_string(chunks.back().end()) + " of " +
                             std::to_string(n) + " words"};
  }
  return std::nullopt;
}

}  // namespace chunkpunct
