#include "sft/roots.hpp"

#include <cmath>
#include <stdexcept>

namespace sft {

Dyadic Dyadic::from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("Dyadic::from_double: non-finite value");
  mpq_class q(x);  // exact: binary doubles are dyadic rationals
  q.canonicalize();
  mpz_class den = q.get_den();
  unsigned e = 0;
  while (den > 1) {
    den /= 2;
    ++e;
  }
  return {q.get_num(), e};
}

double Dyadic::to_double() const { return num.get_d() * std::ldexp(1.0, -static_cast<int>(exp)); }

Dyadic Dyadic::mid(const Dyadic& a, const Dyadic& b) {
  unsigned e = std::max(a.exp, b.exp);
  mpz_class an = a.num << (e - a.exp);
  mpz_class bn = b.num << (e - b.exp);
  return {an + bn, e + 1};
}

int Dyadic::cmp(const Dyadic& a, const Dyadic& b) {
  unsigned e = std::max(a.exp, b.exp);
  mpz_class an = a.num << (e - a.exp);
  mpz_class bn = b.num << (e - b.exp);
  return an == bn ? 0 : (an < bn ? -1 : 1);
}

double Dyadic::width(const Dyadic& lo, const Dyadic& hi) {
  unsigned e = std::max(lo.exp, hi.exp);
  mpz_class d = (hi.num << (e - hi.exp)) - (lo.num << (e - lo.exp));
  return d.get_d() * std::ldexp(1.0, -static_cast<int>(e));
}

IntPoly square_free_part(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("square_free_part: zero polynomial");
  if (p.degree() == 0) return IntPoly::constant(1);
  IntPoly g = IntPoly::gcd(p, p.derivative());
  IntPoly q;
  if (!IntPoly::divide_exact(p, g, q))
    throw std::logic_error("square_free_part: gcd does not divide");
  return q.primitive_part();
}

mpz_class cauchy_root_bound(const IntPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("cauchy_root_bound: zero polynomial");
  mpz_class lead = abs(p.leading());
  mpz_class mx = 0;
  for (int i = 0; i < p.degree(); ++i) {
    mpz_class a = abs(p.coeff(i));
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), a.get_mpz_t(), lead.get_mpz_t());
    if (q > mx) mx = q;
  }
  return mx + 1;
}

namespace {

// Divides out the (positive) content, preserving the sign pattern.
IntPoly reduce_content(const IntPoly& p) {
  if (p.is_zero()) return p;
  mpz_class c = p.content();
  if (c <= 1) return p;
  std::vector<mpz_class> v(p.coeffs());
  for (auto& x : v) x /= c;
  return IntPoly(std::move(v));
}

// Remainder of f by g scaled by a *positive* factor (a power of |lc(g)|).
IntPoly positive_pseudo_rem(const IntPoly& f, const IntPoly& g) {
  IntPoly r = f;
  const int dg = g.degree();
  const mpz_class& lg = g.leading();
  int steps = 0;
  while (!r.is_zero() && r.degree() >= dg) {
    int d = r.degree() - dg;
    IntPoly t = g.shifted(d).scaled(r.leading());
    r = r.scaled(lg) - t;
    ++steps;
  }
  if (lg < 0 && (steps % 2) == 1) return -r;
  return r;
}

int sign_at(const IntPoly& p, const Dyadic& x) { return p.sign_at_dyadic(x.num, x.exp); }

}  // namespace

SturmChain SturmChain::build(const IntPoly& square_free) {
  if (square_free.is_zero()) throw std::invalid_argument("SturmChain: zero polynomial");
  SturmChain s;
  s.chain_.push_back(square_free);
  if (square_free.degree() == 0) return s;
  s.chain_.push_back(square_free.derivative());
  while (s.chain_.back().degree() > 0) {
    const IntPoly& f = s.chain_[s.chain_.size() - 2];
    const IntPoly& g = s.chain_.back();
    IntPoly r = -positive_pseudo_rem(f, g);
    if (r.is_zero())
      throw std::invalid_argument("SturmChain: input polynomial is not square-free");
    s.chain_.push_back(reduce_content(r));
  }
  return s;
}

int SturmChain::variations_at(const Dyadic& x) const {
  int prev = 0, v = 0;
  for (const auto& p : chain_) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++v;
    prev = s;
  }
  return v;
}

int SturmChain::count_roots(const Dyadic& lo, const Dyadic& hi) const {
  if (Dyadic::cmp(lo, hi) >= 0) return 0;
  return variations_at(lo) - variations_at(hi);
}

std::optional<RootEstimate> largest_real_root(const IntPoly& p, double lower_bound, double tol) {
  if (p.is_zero()) throw std::invalid_argument("largest_real_root: zero polynomial");
  if (!(tol > 0)) throw std::invalid_argument("largest_real_root: tolerance must be positive");
  if (p.degree() == 0) return std::nullopt;

  const IntPoly sf = square_free_part(p);
  const SturmChain chain = SturmChain::build(sf);

  Dyadic lo = Dyadic::from_double(lower_bound);
  mpz_class bound = cauchy_root_bound(sf) + 1;
  Dyadic hi = Dyadic::from_int(bound);
  const bool root_at_lb = (sign_at(sf, lo) == 0);
  if (Dyadic::cmp(lo, hi) >= 0) {
    // lower_bound is beyond every root
    if (root_at_lb) return RootEstimate{lower_bound, std::abs(lower_bound) * 1e-15};
    return std::nullopt;
  }

  int cnt = chain.count_roots(lo, hi);  // hi exceeds the Cauchy bound: never a root
  if (cnt == 0) {
    if (root_at_lb) return RootEstimate{lower_bound, std::abs(lower_bound) * 1e-15};
    return std::nullopt;
  }

  // Isolate the largest root: shrink (lo, hi] keeping at least one root inside
  // and none above, until it brackets exactly one simple root by sign change.
  int su = sign_at(sf, lo);
  int sv = sign_at(sf, hi);
  for (int guard = 0;; ++guard) {
    if (guard > 8192) throw std::logic_error("largest_real_root: isolation failed to converge");
    if (cnt == 1 && su != 0 && sv != 0 && su != sv) break;
    Dyadic m = Dyadic::mid(lo, hi);
    int sm = sign_at(sf, m);
    if (sm == 0) {
      // Midpoint is a root; the largest unless something lives above it.
      int above = chain.count_roots(m, hi);
      if (above == 0) {
        double v = m.to_double();
        return RootEstimate{v, std::abs(v) * 1e-15 + 1e-300};
      }
      lo = m;
      su = 0;
      cnt = above;
      continue;
    }
    int upper = chain.count_roots(m, hi);
    if (upper >= 1) {
      lo = m;
      su = sm;
      cnt = upper;
    } else {
      hi = m;
      sv = sm;
      cnt -= upper;  // all remaining roots sit in (lo, m]
    }
  }

  // Plain sign bisection on the isolated simple root.
  while (Dyadic::width(lo, hi) > tol) {
    Dyadic m = Dyadic::mid(lo, hi);
    int sm = sign_at(sf, m);
    if (sm == 0) {
      double v = m.to_double();
      return RootEstimate{v, std::abs(v) * 1e-15 + 1e-300};
    }
    if (sm == su)
      lo = m;
    else
      hi = m;
  }
  Dyadic m = Dyadic::mid(lo, hi);
  double value = m.to_double();
  double radius = Dyadic::width(lo, hi) / 2 + std::abs(value) * 1e-15;
  return RootEstimate{value, radius};
}

}  // namespace sft
