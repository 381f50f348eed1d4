#include "sft/correlation.hpp"

#include <algorithm>
#include <stdexcept>

namespace sft {

namespace {

// Does wu[0 .. k-i] equal wv[i .. k]?
bool shift_match(const Word& wu, const Word& wv, int i) {
  const int len = static_cast<int>(wu.size()) - i;
  for (int p = 0; p < len; ++p)
    if (wu[p] != wv[p + i]) return false;
  return true;
}

}  // namespace

std::vector<int> overlap_coeffs(const Word& wu, const Word& wv, int d) {
  if (wu.size() != wv.size()) throw std::invalid_argument("overlap_coeffs: length mismatch");
  const int k = static_cast<int>(wu.size()) - 1;
  if (d < 0 || d > k) throw std::invalid_argument("overlap_coeffs: depth out of range");
  std::vector<int> c(d + 1, 0);
  const int i_min = (wu == wv) ? 0 : 1;
  for (int i = i_min; i <= d; ++i)
    if (shift_match(wu, wv, i)) c[d - i] = 1;
  return c;
}

IntPoly correlation_poly(const std::vector<int>& coeffs) {
  std::vector<mpz_class> c(coeffs.begin(), coeffs.end());
  return IntPoly(std::move(c));
}

PeriodInfo fundamental_period(const Word& w, int d) {
  const int k = static_cast<int>(w.size()) - 1;
  std::vector<int> c = overlap_coeffs(w, w, d);
  PeriodInfo info;
  info.period = k + 1;
  for (int p = 1; p <= d; ++p)
    if (c[d - p]) {
      info.period = p;
      break;
    }
  const int bl = std::min(info.period, k + 1);
  info.block.assign(w.begin(), w.begin() + bl);
  info.full_copies = static_cast<int>(w.size()) / bl;
  info.partial.assign(w.begin() + info.full_copies * bl, w.end());
  return info;
}

bool is_simple(const Word& b) {
  const int n = static_cast<int>(b.size());
  if (n == 0) throw std::invalid_argument("is_simple: empty word");
  for (int len = 1; 2 * len <= n; ++len) {
    if (n % len) continue;
    bool power = true;
    for (int p = len; p < n && power; ++p)
      if (b[p] != b[p % len]) power = false;
    if (power) return false;
  }
  return true;
}

CorrelationSet correlation_set(const Word& w1, const Word& w2, int d1, int d2) {
  if (w1 == w2) throw std::invalid_argument("correlation_set: words must be distinct");
  CorrelationSet cs;
  cs.d1 = d1;
  cs.d2 = d2;
  cs.c11 = overlap_coeffs(w1, w1, d1);
  cs.c21 = overlap_coeffs(w2, w1, d1);  // beginning of w2 against end of w1
  cs.c12 = overlap_coeffs(w1, w2, d2);
  cs.c22 = overlap_coeffs(w2, w2, d2);
  cs.p11 = correlation_poly(cs.c11);
  cs.p21 = correlation_poly(cs.c21);
  cs.p12 = correlation_poly(cs.c12);
  cs.p22 = correlation_poly(cs.c22);
  return cs;
}

IntPoly one_word_correlation(const Word& w, int d) {
  return correlation_poly(overlap_coeffs(w, w, d));
}

FPolys f_polys(const CorrelationSet& corr, const std::map<int, long>& alphas) {
  FPolys f;
  const int d1 = corr.d1;
  for (const auto& [i, alpha] : alphas) {
    if (i < 0 || i >= d1) throw std::invalid_argument("f_polys: exponent out of range");
    // q^i_11 = t^i + c11_{d1-1} t^{i-1} + ... + c11_{d1-i}
    IntPoly q11 = IntPoly::monomial(i);
    for (int j = 1; j <= i; ++j)
      if (corr.c11[d1 - j]) q11 += IntPoly::monomial(i - j);
    // q^i_21 has no leading term; q^0_21 = 0
    IntPoly q21;
    for (int j = 1; j <= i; ++j)
      if (corr.c21[d1 - j]) q21 += IntPoly::monomial(i - j);
    IntPoly r11 = corr.p11 - q11.shifted(d1 - i);
    IntPoly r21 = corr.p21 - q21.shifted(d1 - i);
    f.q11[i] = q11;
    f.q21[i] = q21;
    f.r11[i] = r11;
    f.r21[i] = r21;
    f.f11 += q11.scaled(alpha);
    f.f21 += q21.scaled(alpha);
  }
  return f;
}

IntPoly delta_poly(const CorrelationSet& corr, const FPolys& f) {
  return (corr.p11 * corr.p22 - corr.p12 * corr.p21) - (corr.p11 * f.f21 - corr.p21 * f.f11);
}

}  // namespace sft
