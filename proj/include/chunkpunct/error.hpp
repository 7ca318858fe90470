#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chunkpunct {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid parameters (chunk size, overlap, min_words_cut, model spec...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Input that does not follow one of the line formats.
class FormatError : public Error {
 public:
  using Error::Error;
};

class MalformedPlainText : public FormatError {
 public:
  MalformedPlainText(std::size_t position, const std::string& what)
      : FormatError("malformed plain text at token " + std::to_string(position) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownLabel : public FormatError {
 public:
  UnknownLabel(std::string token, std::size_t position)
      : FormatError("unknown label '" + token + "' at position " + std::to_string(position)),
        token_(std::move(token)),
        position_(position) {}
  const std::string& token() const noexcept { return token_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string token_;
  std::size_t position_;
};

/// Raised when two sequences that must be aligned are not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public MismatchError {
 public:
  LengthMismatch(std::size_t expected, std::size_t got, const std::string& where = {})
      : MismatchError("length mismatch" + (where.empty() ? std::string() : " in " + where) +
                      ": expected " + std::to_string(expected) + ", got " + std::to_string(got)),
        expected_(expected),
        got_(got) {}
  std::size_t expected() const noexcept { return expected_; }
  std::size_t got() const noexcept { return got_; }

 private:
  std::size_t expected_;
  std::size_t got_;
};

class WordMismatch : public MismatchError {
 public:
  explicit WordMismatch(std::size_t position, const std::string& detail = {})
      : MismatchError("word mismatch at position " + std::to_string(position) +
                      (detail.empty() ? std::string() : ": " + detail)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Consecutive chunks disagree about the words they share.
class OverlapMismatch : public MismatchError {
 public:
  OverlapMismatch(std::size_t chunk_index, std::size_t position)
      : MismatchError("overlap mismatch between chunk " + std::to_string(chunk_index) + " and " +
                      std::to_string(chunk_index + 1) + " at global position " +
                      std::to_string(position)),
        chunk_index_(chunk_index),
        position_(position) {}
  std::size_t chunk_index() const noexcept { return chunk_index_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t chunk_index_;
  std::size_t position_;
};

class MissingChunk : public MismatchError {
 public:
  explicit MissingChunk(std::size_t index)
      : MismatchError("missing chunk " + std::to_string(index)), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class ExternalModelError : public ModelError {
 public:
  ExternalModelError(std::size_t chunk_index, const std::string& what)
      : ModelError("external model failed on chunk " + std::to_string(chunk_index) + ": " + what),
        chunk_index_(chunk_index) {}
  std::size_t chunk_index() const noexcept { return chunk_index_; }

 private:
  std::size_t chunk_index_;
};

}  // namespace chunkpunct
