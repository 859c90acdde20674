#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace writ {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Typing failures of target terms: unbound variables, mismatches,
/// undeclared symbols.
class TypeError : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public TypeError {
 public:
  explicit UnboundVariable(const std::string& name)
      : TypeError("unbound variable '" + name + "'"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

class UndeclaredSymbol : public TypeError {
 public:
  explicit UndeclaredSymbol(const std::string& symbol)
      : TypeError("symbol '" + symbol + "' is not declared in this signature"), symbol_(symbol) {}
  const std::string& symbol() const { return symbol_; }

 private:
  std::string symbol_;
};

class TypeMismatch : public TypeError {
 public:
  TypeMismatch(std::string expected, std::string actual, std::string location)
      : TypeError("type mismatch in " + location + ": expected " + expected + ", got " + actual),
        expected_(std::move(expected)),
        actual_(std::move(actual)),
        location_(std::move(location)) {}

  const std::string& expected() const { return expected_; }
  const std::string& actual() const { return actual_; }
  const std::string& location() const { return location_; }

 private:
  std::string expected_;
  std::string actual_;
  std::string location_;
};

class MetaTypeMismatch : public Error {
 public:
  using Error::Error;
};

class DuplicateSymbol : public Error {
 public:
  explicit DuplicateSymbol(const std::string& symbol)
      : Error("symbol '" + symbol + "' is already declared") {}
};

/// Raised by the evaluator and by recursive denotations when the step
/// budget runs out. Signals divergence or insufficient fuel.
class FuelExhausted : public Error {
 public:
  explicit FuelExhausted(std::uint64_t steps)
      : Error("fuel exhausted after " + std::to_string(steps) + " steps"), steps_(steps) {}
  std::uint64_t steps() const { return steps_; }

 private:
  std::uint64_t steps_;
};

class MissingInterpretation : public Error {
 public:
  MissingInterpretation(const std::string& symbol, const std::string& instantiation)
      : Error("instantiation '" + instantiation + "' has no interpretation for '" + symbol + "'") {}
};

class UnsupportedSymbol : public Error {
 public:
  UnsupportedSymbol(const std::string& symbol, const std::string& analysis)
      : Error("symbol '" + symbol + "' is not supported by the " + analysis + " analysis") {}
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class ArithmeticOverflow : public Error {
 public:
  ArithmeticOverflow() : Error("natural number exceeds the supported range") {}
};

}  // namespace writ
