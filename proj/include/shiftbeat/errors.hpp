#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shiftbeat {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Event times that are negative, non-finite or out of order; bad windows.
class InvalidInputError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive search requested on an instance above the configured size.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

/// A ledger operation refers to a detection that is not present.
class InconsistentLedgerError : public Error {
 public:
  using Error::Error;
};

/// Malformed beat file. The message reads "[source: ]line N: detail".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::string detail, const std::string& source = {})
      : Error((source.empty() ? "" : source + ": ") + "line " + std::to_string(line) +
              ": " + detail),
        line_(line),
        detail_(std::move(detail)) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t line_;
  std::string detail_;
};

class UnsupportedFormatError : public Error {
 public:
  using Error::Error;
};

class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace shiftbeat
