#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace netcentral {

/// Error categories. Each maps onto one CLI exit status.
enum class ErrorKind {
  parse,       // malformed text or document structure
  validation,  // well-formed but semantically invalid network
  analysis,    // a computation cannot be carried out (scenario disconnects, overflow, ...)
  usage,       // bad arguments to an operation
};

/// 1-based line/column into a source document. line == 0 means "unknown".
struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;

  [[nodiscard]] bool known() const noexcept { return line != 0; }
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, SourcePos pos = {})
      : std::runtime_error(message), kind_(kind), pos_(pos) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  [[nodiscard]] const SourcePos& pos() const noexcept { return pos_; }

 private:
  ErrorKind kind_;
  SourcePos pos_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message, SourcePos pos = {})
      : Error(ErrorKind::parse, message, pos) {}
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& message, SourcePos pos = {})
      : Error(ErrorKind::validation, message, pos) {}
};

class AnalysisError : public Error {
 public:
  explicit AnalysisError(const std::string& message) : Error(ErrorKind::analysis, message) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& message) : Error(ErrorKind::usage, message) {}
};

}  // namespace netcentral
