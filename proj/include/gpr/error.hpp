#ifndef GPR_ERROR_HPP
#define GPR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace gpr {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
  using Error::Error;
};

/// No observed sites in a sample.
class EmptySampleError : public Error {
public:
  using Error::Error;
};

/// Observed sample values are all equal, so the angle map is undefined.
class DegenerateRangeError : public Error {
public:
  using Error::Error;
};

class RangeError : public Error {
public:
  using Error::Error;
};

/// Inconsistent model or run configuration (e.g. bias mode without a bias field).
class ConfigurationError : public Error {
public:
  using Error::Error;
};

/// Relative error metrics requested at a site whose true value is zero.
class DomainError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  ParseError(const std::string& file, std::size_t row, std::size_t column, const std::string& what)
      : Error(file + ":" + std::to_string(row) + ":" + std::to_string(column) + ": " + what),
        file_(file), row_(row), column_(column) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::string file_;
  std::size_t row_;
  std::size_t column_;
};

} // namespace gpr

#endif // GPR_ERROR_HPP
