#pragma once

#include <vector>

#include "sft/int_poly.hpp"

namespace sft {

using IntMatrix = std::vector<std::vector<long long>>;

enum class CharpolyMethod {
  Auto,             // PolyElimination for small matrices, Modular above
  PolyElimination,  // fraction-free elimination over Z[t]
  Modular,          // per-prime Hessenberg reduction, CRT-lifted
};

// Exact monic characteristic polynomial det(tI - M) of a square integer
// matrix.  The modular path works prime-by-prime: the stable image of M is
// found by iterating M on its own column space until the rank stops
// dropping, the induced map on that image is reduced to Hessenberg form,
// and the results are CRT-lifted over enough primes to cover a Hadamard
// bound on the coefficients (plus one independent checking prime).
IntPoly matrix_charpoly(const IntMatrix& m, CharpolyMethod method = CharpolyMethod::Auto,
                        int dimension_cap = 512);

}  // namespace sft
