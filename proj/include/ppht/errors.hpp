#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ppht {

// Base class for every failure raised by the library.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class parse_fault { empty_input, ragged_rows, bad_symbol };

// Matrix text could not be parsed. Line/column positions are 1-based.
class parse_error : public error {
 public:
  parse_error(parse_fault fault, std::size_t line, std::size_t column,
              const std::string& message)
      : error(message), fault_(fault), line_(line), column_(column) {}

  parse_fault fault() const { return fault_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  parse_fault fault_;
  std::size_t line_;
  std::size_t column_;
};

// Brute-force enumeration refused to run: instance exceeds the configured cap.
class too_large : public error {
 public:
  using error::error;
};

// A graph that must be free of odd-weight cycles contains one.
class odd_cycle_error : public error {
 public:
  using error::error;
};

}  // namespace ppht
