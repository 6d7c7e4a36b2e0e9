#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qga {

// Thrown for malformed or inconsistent algebraic input (tables, maps, configs).
class invalid_input : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class parse_error : public std::runtime_error {
 public:
  parse_error(std::size_t position, const std::string& message)
      : std::runtime_error("parse error at " + std::to_string(position) + ": " + message),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

// A caller-supplied enumeration limit would be exceeded.
class bound_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qga
