#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "sft/correlation.hpp"
#include "sft/sft_core.hpp"

using namespace sft;

namespace {

const SftSpec FULL2 = full_shift(2);

Word W(const std::string& s) { return parse_word(FULL2, s); }

// Straightforward quadratic re-derivation of the overlap bits, used as an
// independent oracle against the library's implementation.
bool naive_match(const Word& u, const Word& v, int i) {
  for (size_t p = 0; p + i < v.size(); ++p)
    if (u[p] != v[p + i]) return false;
  return true;
}

}  // namespace

TEST_CASE("self-overlap coefficients") {
  // aaa at depth 1: trivial c_1 plus the shift-1 overlap
  CHECK(overlap_coeffs(W("aaa"), W("aaa"), 1) == std::vector<int>{1, 1});
  // aaba at depth 2: only the trivial term
  CHECK(overlap_coeffs(W("aaba"), W("aaba"), 2) == std::vector<int>{0, 0, 1});
  // abab at depth 2: shift-2 overlap
  CHECK(overlap_coeffs(W("abab"), W("abab"), 2) == std::vector<int>{1, 0, 1});
  // aaaa at depth 2: every shift overlaps
  CHECK(overlap_coeffs(W("aaaa"), W("aaaa"), 2) == std::vector<int>{1, 1, 1});
  CHECK_THROWS_AS(overlap_coeffs(W("aa"), W("aaa"), 1), std::invalid_argument);
  CHECK_THROWS_AS(overlap_coeffs(W("aaa"), W("aaa"), 3), std::invalid_argument);
}

TEST_CASE("cross-overlap coefficients") {
  // beginning of aabb against end of aaba: no alignment matches
  CHECK(overlap_coeffs(W("aabb"), W("aaba"), 2) == std::vector<int>{0, 0, 0});
  // beginning of aaab against end of baaa: shifts 1,2,3 all match
  CHECK(overlap_coeffs(W("aaab"), W("baaa"), 3) == std::vector<int>{1, 1, 1, 0});
  // shift-1 alignment matches, yet the trivial shift stays 0 for distinct words
  CHECK(overlap_coeffs(W("ab"), W("aa"), 1) == std::vector<int>{1, 0});
  CHECK(overlap_coeffs(W("aa"), W("ab"), 1) == std::vector<int>{0, 0});
}

TEST_CASE("overlap coefficients match a naive rescan") {
  for (const auto& u : enumerate_admissible(FULL2, 5)) {
    for (const auto& v : enumerate_admissible(FULL2, 5)) {
      int d = 3;
      auto c = overlap_coeffs(u, v, d);
      int lo = (u == v) ? 0 : 1;
      for (int i = lo; i <= d; ++i) CHECK(c[d - i] == (naive_match(u, v, i) ? 1 : 0));
    }
  }
}

TEST_CASE("correlation polynomials") {
  CHECK(one_word_correlation(W("aaa"), 1) == IntPoly::of({1, 1}));
  CHECK(one_word_correlation(W("abab"), 2) == IntPoly::of({1, 0, 1}));
  CHECK(one_word_correlation(W("aaaa"), 2) == IntPoly::of({1, 1, 1}));
  CHECK(one_word_correlation(W("aaba"), 2) == IntPoly::of({0, 0, 1}));
  CHECK(correlation_poly({0, 1, 0}) == IntPoly::of({0, 1}));
}

TEST_CASE("fundamental periods and block decompositions") {
  PeriodInfo p = fundamental_period(W("abab"), 2);
  CHECK(p.period == 2);
  CHECK(p.block == W("ab"));
  CHECK(p.full_copies == 2);
  CHECK(p.partial.empty());

  p = fundamental_period(W("aaaa"), 2);
  CHECK(p.period == 1);
  CHECK(p.block == W("a"));
  CHECK(p.full_copies == 4);

  p = fundamental_period(W("aaba"), 2);
  CHECK(p.period == 4);  // k+1: no nontrivial overlap within depth
  CHECK(p.block == W("aaba"));
  CHECK(p.full_copies == 1);

  p = fundamental_period(W("aabaa"), 3);
  CHECK(p.period == 3);
  CHECK(p.block == W("aab"));
  CHECK(p.full_copies == 1);
  CHECK(p.partial == W("aa"));
}

TEST_CASE("simple words") {
  CHECK(is_simple(Word{0, 1, 2, 0, 1}) == true);  // self-overlapping yet not a proper power
  CHECK(is_simple(W("abab")) == false);
  CHECK(is_simple(W("aa")) == false);
  CHECK(is_simple(W("a")) == true);
  CHECK(is_simple(W("aab")) == true);
  CHECK(is_simple(W("aabaab")) == false);
  CHECK_THROWS_AS(is_simple(Word{}), std::invalid_argument);
}

TEST_CASE("period divisibility of overlap indices") {
  // Every nontrivial overlap index i satisfies p | i or i >= k+2-p.
  for (int k = 1; k <= 10; ++k) {
    for (const auto& w : enumerate_admissible(FULL2, k + 1)) {
      int d = k - 1 >= 0 ? k - 1 : 0;  // depth below the trivial shift
      auto c = overlap_coeffs(w, w, d);
      int p = fundamental_period(w, d).period;
      for (int i = 1; i <= d; ++i)
        if (c[d - i]) {
          bool ok = (i % p == 0) || (i >= k + 2 - p);
          CHECK(ok);
        }
    }
  }
}

TEST_CASE("full-period copies sit on period boundaries") {
  // Scan every occurrence of the leading block inside the word.
  for (int k = 2; k <= 10; ++k) {
    for (const auto& w : enumerate_admissible(FULL2, k + 1)) {
      PeriodInfo info = fundamental_period(w, k - 1);
      if (info.period > k) continue;
      const int bl = static_cast<int>(info.block.size());
      for (size_t start = 0; start + bl <= w.size(); ++start) {
        if (std::equal(info.block.begin(), info.block.end(), w.begin() + start)) {
          CHECK(start % info.period == 0);
        }
      }
    }
  }
}

TEST_CASE("correlation set for a disjoint pair") {
  CorrelationSet cs = correlation_set(W("aaa"), W("bbb"), 1, 1);
  CHECK(cs.p11 == IntPoly::of({1, 1}));
  CHECK(cs.p22 == IntPoly::of({1, 1}));
  CHECK(cs.p21.is_zero());
  CHECK(cs.p12.is_zero());

  FPolys f = f_polys(cs, {});
  CHECK(f.f11.is_zero());
  CHECK(f.f21.is_zero());
  CHECK(delta_poly(cs, f) == IntPoly::of({1, 2, 1}));  // (t+1)^2
}

TEST_CASE("f polynomials for the interacting pairs") {
  // (aaba, aabb): alpha = {1 -> -1}
  CorrelationSet cs = correlation_set(W("aaba"), W("aabb"), 2, 1);
  CHECK(cs.p11 == IntPoly::of({0, 0, 1}));
  CHECK(cs.p22 == IntPoly::of({0, 1}));
  CHECK(cs.p21.is_zero());
  CHECK(cs.p12.is_zero());
  FPolys f = f_polys(cs, {{1, -1}});
  CHECK(f.f11 == IntPoly::of({0, -1}));  // -t
  CHECK(f.f21.is_zero());
  CHECK(delta_poly(cs, f) == IntPoly::of({0, 0, 0, 1}));  // t^3

  // (aaaa, abaa): alpha = {1 -> +1}
  cs = correlation_set(W("aaaa"), W("abaa"), 2, 1);
  f = f_polys(cs, {{1, 1}});
  CHECK(f.f11 == IntPoly::of({1, 1}));  // t + 1
  CHECK(f.f21.is_zero());
}

TEST_CASE("q/r decomposition identity") {
  // p_* = t^(d1-i) q^i_* + r^i_* for every exponent, on a batch of pairs.
  auto words = enumerate_admissible(FULL2, 6);
  for (size_t a = 0; a < words.size(); a += 7) {
    for (size_t b = 0; b < words.size(); b += 5) {
      if (words[a] == words[b]) continue;
      CorrelationSet cs = correlation_set(words[a], words[b], 4, 4);
      std::map<int, long> alphas{{1, -1}, {3, 1}};
      FPolys f = f_polys(cs, alphas);
      for (const auto& [i, q] : f.q11) {
        CHECK(cs.p11 == q.shifted(cs.d1 - i) + f.r11[i]);
        CHECK(cs.p21 == f.q21[i].shifted(cs.d1 - i) + f.r21[i]);
        CHECK(f.r11[i].degree() < cs.d1 - i);
        CHECK(f.r21[i].degree() < cs.d1 - i);
      }
    }
  }
}

TEST_CASE("delta is monic of degree d1+d2") {
  auto words = enumerate_admissible(FULL2, 5);
  for (size_t a = 0; a < words.size(); ++a) {
    for (size_t b = a + 1; b < words.size(); ++b) {
      CorrelationSet cs = correlation_set(words[a], words[b], 3, 3);
      FPolys f = f_polys(cs, {{1, -1}});
      IntPoly delta = delta_poly(cs, f);
      CHECK(delta.degree() == 6);
      CHECK(delta.leading() == 1);
    }
  }
}

TEST_CASE("correlation set rejects equal words") {
  CHECK_THROWS_AS(correlation_set(W("aaa"), W("aaa"), 1, 1), std::invalid_argument);
}

TEST_CASE("exponent range is enforced") {
  CorrelationSet cs = correlation_set(W("aaa"), W("bbb"), 1, 1);
  CHECK_THROWS_AS(f_polys(cs, {{1, -1}}), std::invalid_argument);  // i must be < d1
  CHECK_NOTHROW(f_polys(cs, {{0, -1}}));
}
