#include "sft/poly_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace sft {

IntPoly poly_mat_det(PolyMatrix m) {
  const int n = static_cast<int>(m.size());
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("poly_mat_det: not square");
  if (n == 0) return IntPoly::constant(1);

  int sign = 1;
  IntPoly prev = IntPoly::constant(1);
  for (int k = 0; k + 1 < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (!m[i][k].is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) return IntPoly();
    if (piv != k) {
      std::swap(m[piv], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        IntPoly num = m[k][k] * m[i][j] - m[i][k] * m[k][j];
        IntPoly q;
        if (!IntPoly::divide_exact(num, prev, q))
          throw std::logic_error("poly_mat_det: inexact division");
        m[i][j] = std::move(q);
      }
      m[i][k] = IntPoly();
    }
    prev = m[k][k];
  }
  IntPoly det = std::move(m[n - 1][n - 1]);
  return sign < 0 ? -det : det;
}

}  // namespace sft
