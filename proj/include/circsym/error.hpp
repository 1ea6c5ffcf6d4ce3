#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace circsym {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed or produced an inadmissible value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A symmetric matrix has an eigenvalue below the admissible tolerance.
class NotPsdError : public NumericError {
 public:
  NotPsdError(const std::string& what, double eigenvalue)
      : NumericError(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Pairwise summaries violate |<w_j, w_k>|^2 <= |w_j|^2 |w_k|^2.
class InconsistentSummariesError : public NumericError {
 public:
  using NumericError::NumericError;
};

/// The requested computation is not available for the given kernel or shape.
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file. Row and column are 1-based; 0 means "not applicable".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t row = 0, std::size_t column = 0)
      : Error(format(what, row, column)), row_(row), column_(column) {}
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t row, std::size_t column) {
    if (row == 0) return what;
    std::string out = "row " + std::to_string(row);
    if (column != 0) out += ", column " + std::to_string(column);
    return out + ": " + what;
  }
  std::size_t row_;
  std::size_t column_;
};

/// Invalid study configuration; carries the offending key.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& key, const std::string& what)
      : Error(key.empty() ? what : "config key '" + key + "': " + what), key_(key) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace circsym
