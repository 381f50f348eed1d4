// Overlap combinatorics of forbidden words: correlation coefficients and
// polynomials, fundamental periods, simple-word tests, and the truncated
// q/r decompositions feeding the f-polynomials and Delta.
#pragma once

#include <map>
#include <vector>

#include "sft/int_poly.hpp"
#include "sft/sft_core.hpp"

namespace sft {

// Coefficient vector (c_0, ..., c_d) with c[x] the coefficient of t^x.
// For wu == wv this is the self-overlap vector: c[d-i] = 1 iff
// wu[0..k-i] == wu[i..k], including the trivial c[d] = 1 at i = 0.
// For wu != wv only shifts i >= 1 count (beginning of wu against the end
// of wv) and c[d] = 0.  Both words must share one length k+1 with d <= k.
std::vector<int> overlap_coeffs(const Word& wu, const Word& wv, int d);

// p(t) = sum c[x] t^x.
IntPoly correlation_poly(const std::vector<int>& coeffs);

struct PeriodInfo {
  int period = 0;        // least positive p <= d with c_{d-p} = 1, else k+1
  Word block;            // leading block B of length min(period, k+1)
  int full_copies = 0;   // number of complete B's tiling w from the left
  Word partial;          // trailing proper prefix of B (possibly empty)
};

// Fundamental period of w relative to overlap depth d.
PeriodInfo fundamental_period(const Word& w, int d);

// True iff B is not a nontrivial power A^e (e > 1) of a shorter word.
bool is_simple(const Word& b);

struct CorrelationSet {
  int d1 = 0, d2 = 0;
  std::vector<int> c11, c21;  // indexed by subscript, size d1+1
  std::vector<int> c12, c22;  // size d2+1
  IntPoly p11, p21, p12, p22;
};

// All four correlation vectors/polynomials for an ordered pair (w1, w2)
// with overlap depths d1, d2.  Cross polynomials p21, p12 omit the top
// degree term by definition.
CorrelationSet correlation_set(const Word& w1, const Word& w2, int d1, int d2);

// One-word correlation polynomial (self overlaps of w at depth d).
IntPoly one_word_correlation(const Word& w, int d);

struct FPolys {
  IntPoly f11, f21;
  std::map<int, IntPoly> q11, q21, r11, r21;  // per retained exponent i_m
};

// Truncated/shifted pieces q^i, remainders r^i (p_* = t^(d1-i) q^i_* + r^i_*)
// and the combinations f_* = sum alpha_{i_m} q^{i_m}_*.  The alphas map is
// exponent -> coefficient; exponents must lie in [0, d1-1].
FPolys f_polys(const CorrelationSet& corr, const std::map<int, long>& alphas);

// Delta(t) = (p11 p22 - p12 p21) - (p11 f21 - p21 f11); monic of degree
// exactly d1 + d2.
IntPoly delta_poly(const CorrelationSet& corr, const FPolys& f);

}  // namespace sft
