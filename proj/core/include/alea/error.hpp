#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace alea {

// Location in a source text; 1-based, column counted in code points.
// line == 0 means "unknown".
struct SourcePos {
  std::uint32_t line = 0;
  std::uint32_t column = 0;

  bool known() const { return line != 0; }
};

std::string to_string(SourcePos pos);

// Base of all user-facing failures. what() is the fully rendered message,
// including the position when one is known.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, std::string message, SourcePos pos = {});

  const std::string& kind() const { return kind_; }
  const std::string& message() const { return message_; }
  SourcePos pos() const { return pos_; }

 private:
  std::string kind_;
  std::string message_;
  SourcePos pos_;
};

class ParseError : public Error {
 public:
  explicit ParseError(std::string message, SourcePos pos = {})
      : Error("parse error", std::move(message), pos) {}
};

class TypeError : public Error {
 public:
  explicit TypeError(std::string message, SourcePos pos = {})
      : Error("type error", std::move(message), pos) {}
};

class EvalError : public Error {
 public:
  explicit EvalError(std::string message, SourcePos pos = {})
      : Error("evaluation error", std::move(message), pos) {}
};

// A violated internal invariant: always a bug, never a user error.
class InternalError : public Error {
 public:
  explicit InternalError(std::string message)
      : Error("internal error", std::move(message)) {}
};

}  // namespace alea
