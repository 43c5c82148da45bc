#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace quiverweyl {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct UnknownParameter : Error {
  explicit UnknownParameter(const std::string& name)
      : Error("unknown time parameter '" + name + "'") {}
};

struct EvaluationPole : Error {
  EvaluationPole() : Error("assignment annihilates the denominator") {}
};

// Malformed scalar or word text; offset is a 0-based character position.
struct SyntaxError : Error {
  SyntaxError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

struct InvalidPartition : Error {
  using Error::Error;
};

struct NotACycle : Error {
  using Error::Error;
};

struct PresentationMismatch : Error {
  using Error::Error;
};

struct OrderViolation : Error {
  using Error::Error;
};

struct DegreeBoundTooSmall : Error {
  using Error::Error;
};

struct UnsupportedShape : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(what + " (line " + std::to_string(line) + ", column " +
              std::to_string(column) + ")"),
        line(line),
        column(column) {}
  std::size_t line;
  std::size_t column;
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace quiverweyl
