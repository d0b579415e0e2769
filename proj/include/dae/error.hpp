#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dae {

/// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

/// Invalid argument value (negative sigma, empty dataset, lo >= hi, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// Value outside the mathematical domain of an operation (BCE targets outside [0,1]).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf encountered during training, Adam updates or sampling chains.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Optimal-reconstruction denominator underflowed: the point is too far from the mass.
class UnderflowError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// A forward cache handed to backward that does not belong to the parameters.
class ContractError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Malformed binary input. `offset()` is the byte position where parsing failed.
class FormatError : public Error {
 public:
  FormatError(const std::string& what, std::size_t offset)
      : Error(what + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class TruncatedError : public FormatError {
 public:
  using FormatError::FormatError;
};

class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

/// Bad configuration text; `line()` is 1-based, 0 when not tied to a line.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace dae
