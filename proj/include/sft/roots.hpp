// Exact real-root location for integer polynomials: square-free reduction,
// Sturm sequences evaluated at dyadic rationals (sign-only, no rounding), and
// bisection refinement of the largest real root above a given bound.

#pragma once

#include <optional>

#include "sft/int_poly.hpp"

namespace sft {

// Exact dyadic rational num / 2^exp; the only numbers the root isolator needs.
struct Dyadic {
  mpz_class num;
  unsigned exp = 0;

  static Dyadic from_double(double x);
  static Dyadic from_int(const mpz_class& n) { return {n, 0}; }
  double to_double() const;
  static Dyadic mid(const Dyadic& a, const Dyadic& b);
  // -1, 0, +1 comparing a with b
  static int cmp(const Dyadic& a, const Dyadic& b);
  static double width(const Dyadic& lo, const Dyadic& hi);
};

// p with repeated factors collapsed: p / gcd(p, p'), primitive.
IntPoly square_free_part(const IntPoly& p);

// Integer B with every real root of p inside [-B, B].
mpz_class cauchy_root_bound(const IntPoly& p);

class SturmChain {
 public:
  // Requires a square-free, nonzero polynomial.
  static SturmChain build(const IntPoly& square_free);
  int variations_at(const Dyadic& x) const;
  // Number of real roots in the half-open interval (lo, hi]; requires that
  // neither endpoint is itself a root.
  int count_roots(const Dyadic& lo, const Dyadic& hi) const;
  const std::vector<IntPoly>& polys() const { return chain_; }

 private:
  std::vector<IntPoly> chain_;
};

struct RootEstimate {
  double value = 0.0;
  double radius = 0.0;  // |value - true root| <= radius
};

// Largest real root of p that is >= lower_bound, located to within tol.
// Throws std::invalid_argument for the zero polynomial; returns nullopt when no
// real root >= lower_bound exists.
std::optional<RootEstimate> largest_real_root(const IntPoly& p, double lower_bound,
                                              double tol = 1e-12);

}  // namespace sft
