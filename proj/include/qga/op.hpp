#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace qga {

// The three binary operations of a quasigroup: multiplication, left division
// (a \ b, the unique x with a*x = b) and right division (a / b, the unique x
// with x*b = a).
enum class Op : std::uint8_t { mul, ldiv, rdiv };

inline constexpr std::array<Op, 3> all_ops{Op::mul, Op::ldiv, Op::rdiv};

constexpr std::string_view op_symbol(Op op) {
  switch (op) {
    case Op::mul: return "*";
    case Op::ldiv: return "ld";
    case Op::rdiv: return "rd";
  }
  return "?";
}

}  // namespace qga
