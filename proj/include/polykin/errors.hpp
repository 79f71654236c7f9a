#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace polykin {

/// Base class of every error raised by the solver. The message can be
/// extended with context (step index, scenario field) as it propagates.
class Error : public std::exception {
public:
  explicit Error(std::string message) : message_(std::move(message)) {}

  const char* what() const noexcept override { return message_.c_str(); }

  void add_context(const std::string& context) { message_ = context + ": " + message_; }

protected:
  void append(const std::string& detail) { message_ += detail; }

private:
  std::string message_;
};

class OutOfRange : public Error {
public:
  using Error::Error;
};

class InvalidConfig : public Error {
public:
  using Error::Error;
};

class DegenerateGrid : public Error {
public:
  using Error::Error;
};

class GridMismatch : public Error {
public:
  using Error::Error;
};

class NegativeInitialData : public Error {
public:
  using Error::Error;
};

/// Errors that originate in a specific spatial cell.
class CellError : public Error {
public:
  CellError(std::string message, std::optional<std::size_t> cell)
      : Error(cell ? message + " (cell " + std::to_string(*cell) + ")" : message), cell_(cell) {}

  std::optional<std::size_t> cell() const noexcept { return cell_; }

  /// Attaches the spatial cell index if the error does not carry one yet.
  void locate(std::size_t cell) {
    if (cell_) return;
    cell_ = cell;
    append(" (cell " + std::to_string(cell) + ")");
  }

private:
  std::optional<std::size_t> cell_;
};

class NegativeField : public CellError {
public:
  using CellError::CellError;
};

/// Vacuum cell: the discrete mass fell below the underflow threshold.
class ZeroDensity : public CellError {
public:
  using CellError::CellError;
};

class NonSpdTensor : public CellError {
public:
  using CellError::CellError;
};

class DegenerateTemperature : public CellError {
public:
  using CellError::CellError;
};

class BoundViolated : public Error {
public:
  using Error::Error;
};

class EnvelopeViolated : public Error {
public:
  using Error::Error;
};

class DegenerateTable : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

class ValidationError : public Error {
public:
  ValidationError(const std::string& field, const std::string& message)
      : Error(field + ": " + message), field_(field) {}

  const std::string& field() const noexcept { return field_; }

private:
  std::string field_;
};

} // namespace polykin
