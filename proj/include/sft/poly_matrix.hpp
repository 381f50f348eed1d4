#pragma once

#include <vector>

#include "sft/int_poly.hpp"

namespace sft {

using PolyMatrix = std::vector<std::vector<IntPoly>>;

// Exact determinant over Z[t] by fraction-free (Bareiss) elimination: every
// intermediate entry is a minor of the input, and each division is exact.
IntPoly poly_mat_det(PolyMatrix m);

}  // namespace sft
