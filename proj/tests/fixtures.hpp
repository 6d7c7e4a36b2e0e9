#pragma once

#include <string>
#include <vector>

#include "qga/qga.hpp"

namespace fixtures {

inline qga::Table cyclic_table(std::size_t n) {
  qga::Table t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return t;
}

inline qga::Table klein_table() {
  qga::Table t(4, std::vector<std::size_t>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) t[a][b] = a ^ b;
  return t;
}

/// Trivial base "b" = {e}, a1 = Z3 on {e, x, x2}, a2 = Z3 on {e, y, y2}.
inline qga::AmalgamConfig two_cyclic() {
  using qga::FiniteQuasigroup;
  return qga::AmalgamConfig(FiniteQuasigroup::from_mul_table({{0}}, {"e"}, "b"),
                            {FiniteQuasigroup::from_mul_table(cyclic_table(3), {"e", "x", "x2"}, "a1"),
                             FiniteQuasigroup::from_mul_table(cyclic_table(3), {"e", "y", "y2"}, "a2")},
                            {{0}, {0}});
}

/// Base Z2 = {0, 2} inside d = Z4 and e = Z2 x Z2 (base 1 -> e.1).
inline qga::AmalgamConfig z4_klein() {
  using qga::FiniteQuasigroup;
  return qga::AmalgamConfig(FiniteQuasigroup::cyclic(2, "b"),
                            {FiniteQuasigroup::cyclic(4, "d"),
                             FiniteQuasigroup::from_mul_table(klein_table(), {}, "e")},
                            {{0, 2}, {0, 1}});
}

inline qga::Embedding z2_in_z4() {
  return qga::Embedding::make(qga::FiniteQuasigroup::cyclic(2, "b"), qga::FiniteQuasigroup::cyclic(4, "e"),
                              {0, 2});
}

}  // namespace fixtures
