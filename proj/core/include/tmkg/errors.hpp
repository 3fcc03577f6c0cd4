#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tmkg {

// Malformed input text (JSONL, N-Triples, rule files). line() is 1-based
// and 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& message, std::size_t line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_ = 0;
};

// A record or configuration violating a domain invariant (negative speed,
// duplicate track id, overlapping synth episodes, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& message) : std::runtime_error(message) {}
};

// Remote embedder failures keep their cause so callers can distinguish a
// timeout from a protocol violation.
class RemoteEmbedderError : public std::runtime_error {
 public:
  enum class Kind { kTimeout, kTransport, kHttpStatus, kDimensionMismatch, kBadResponse };

  RemoteEmbedderError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

}  // namespace tmkg
