#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mifs {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlphabetMismatch : public Error {
 public:
  AlphabetMismatch() : Error("operands use different alphabets") {}
};

class OutOfRange : public Error {
 public:
  using Error::Error;
};

class UnknownLetter : public Error {
 public:
  explicit UnknownLetter(const std::string& label) : Error("unknown letter '" + label + "'") {}
};

/// Word-spec text that does not match the grammar. `position` is a 0-based byte offset.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& what)
      : Error("syntax error at column " + std::to_string(position + 1) + ": " + what),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A word that parses but violates the block structure of its class.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Raised when a stream's Sigma class cannot be decided from its representation.
class Undecidable : public Error {
 public:
  using Error::Error;
};

class NotClassified : public Error {
 public:
  using Error::Error;
};

class WrongClass : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::size_t steps, double bound)
      : Error("step budget of " + std::to_string(steps) +
              " letters exhausted before the stopping bound fell below tolerance (bound " +
              std::to_string(bound) + ")"),
        steps_(steps),
        bound_(bound) {}
  std::size_t steps() const noexcept { return steps_; }
  double bound() const noexcept { return bound_; }

 private:
  std::size_t steps_;
  double bound_;
};

class PreconditionFailed : public Error {
 public:
  PreconditionFailed(const std::string& what, double measured)
      : Error(what + " (measured " + std::to_string(measured) + ")"), measured_(measured) {}
  double measured() const noexcept { return measured_; }

 private:
  double measured_;
};

/// Configuration file errors; `line` is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(std::size_t line, const std::string& what)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class ValidationFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace mifs
