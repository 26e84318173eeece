#pragma once

#include <array>

#include "sepcert/linalg.hpp"

namespace sepcert::reference {

using Coeffs = std::array<double, 4>;
struct Printed {
  Coeffs x, y;
};

// Replacement states of the eight-member set on C^4 (x) C^4, unnormalized.
// Entries [3][1] and [7][0] use the factors forced by orthogonality to the set.
inline const std::array<std::array<Printed, 6>, 8> kFengReplacements{{
    {{{{1, 0, 0, 0}, {1, 0, 0, 0}},
      {{1, 1, 0, -1}, {1, 0, 1, 0}},
      {{1, -1, 0, 0}, {1, 1, 0, -1}},
      {{1, -1, 1, 0}, {1, -1, 1, 0}},
      {{1, 0, 1, 0}, {1, 0, -1, 1}},
      {{1, 0, -1, 1}, {1, -1, 0, 0}}}},
    {{{{0, 1, 0, 0}, {1, 0, -1, 1}},
      {{1, 1, 0, -1}, {0, 0, 1, 0}},
      {{1, 1, 0, 0}, {0, 0, 0, 1}},
      {{1, -1, 1, 0}, {0, 1, -2, 1}},
      {{0, 1, 1, 1}, {1, -1, -2, 0}},
      {{0, 1, 0, -1}, {1, 0, 0, 0}}}},
    {{{{0, 0, 1, 0}, {1, 1, 0, -1}},
      {{1, 0, -1, 1}, {0, 1, 0, 0}},
      {{0, 0, 1, -1}, {1, 0, 0, 0}},
      {{0, 1, 1, 1}, {1, 2, 1, 0}},
      {{1, -1, 1, 0}, {0, 2, -1, -1}},
      {{1, 0, -1, 0}, {0, 0, 0, 1}}}},
    {{{{0, 0, 0, 1}, {0, 0, 0, 1}},
      {{1, 1, 0, -1}, {0, 0, 1, 1}},
      {{0, 1, 0, 1}, {1, 1, 0, -1}},
      {{0, 0, 1, 1}, {1, 0, -1, 1}},
      {{0, 1, 1, 1}, {0, 1, 1, 1}},
      {{1, 0, -1, 1}, {0, 1, 0, 1}}}},
    {{{{0, 1, 1, 1}, {1, -1, 1, 0}},
      {{0, 1, 0, 0}, {2, 0, 1, -1}},
      {{0, 0, 0, 1}, {1, 0, 0, 0}},
      {{1, 0, -1, -2}, {0, 0, 1, 0}},
      {{0, 0, 1, 0}, {2, -1, 0, 1}},
      {{1, 1, 0, 2}, {0, 1, 0, 0}}}},
    {{{{1, 0, -1, 1}, {0, 0, 1, 0}},
      {{0, 0, 0, 1}, {1, 0, -1, 0}},
      {{1, 0, 0, 0}, {0, 0, 1, -1}},
      {{1, -1, -2, 0}, {0, 1, 1, 1}},
      {{0, 0, 1, 0}, {1, 0, -1, 1}},
      {{0, 1, -2, 1}, {1, -1, 1, 0}}}},
    {{{{1, 1, 0, -1}, {0, 1, 0, 0}},
      {{1, 0, 0, 0}, {0, 1, 0, -1}},
      {{0, 1, 0, 0}, {1, 1, 0, -1}},
      {{1, 2, 1, 0}, {0, 1, 1, 1}},
      {{0, 2, -1, -1}, {1, -1, 1, 0}},
      {{0, 0, 0, 1}, {1, 1, 0, 0}}}},
    {{{{1, -1, 1, 0}, {0, 1, 1, 1}},
      {{0, 1, 0, 0}, {1, 0, -1, -2}},
      {{2, -1, 0, 1}, {0, 1, 0, 0}},
      {{1, 0, 0, 0}, {0, 0, 0, 1}},
      {{2, 0, 1, -1}, {0, 0, 1, 0}},
      {{0, 0, 1, 0}, {1, 1, 0, 2}}}},
}};

inline ComplexVector from(const Coeffs& c) {
  ComplexVector v(4);
  for (int i = 0; i < 4; ++i) v(i) = c[i];
  return v.normalized();
}

}  // namespace sepcert::reference
