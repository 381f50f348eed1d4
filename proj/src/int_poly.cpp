#include "sft/int_poly.hpp"

#include <sstream>
#include <stdexcept>

namespace sft {

namespace {
const mpz_class kZero = 0;
}

IntPoly IntPoly::of(std::initializer_list<long> ascending) {
  std::vector<mpz_class> c;
  c.reserve(ascending.size());
  for (long v : ascending) c.emplace_back(v);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::constant(mpz_class c) {
  std::vector<mpz_class> v;
  v.push_back(std::move(c));
  return IntPoly(std::move(v));
}

IntPoly IntPoly::monomial(int deg, mpz_class coeff) {
  if (deg < 0) throw std::invalid_argument("monomial: negative degree");
  std::vector<mpz_class> v(deg + 1, kZero);
  v[deg] = std::move(coeff);
  return IntPoly(std::move(v));
}

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const mpz_class& IntPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return kZero;
  return c_[i];
}

const mpz_class& IntPoly::leading() const {
  if (c_.empty()) throw std::invalid_argument("leading coefficient of the zero polynomial");
  return c_.back();
}

IntPoly IntPoly::operator-() const {
  IntPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

IntPoly& IntPoly::operator+=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), kZero);
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

IntPoly& IntPoly::operator-=(const IntPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), kZero);
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) return IntPoly();
  std::vector<mpz_class> r(a.c_.size() + b.c_.size() - 1, 0);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) {
      if (b.c_[j] == 0) continue;
      r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return IntPoly(std::move(r));
}

IntPoly IntPoly::scaled(const mpz_class& s) const {
  if (s == 0) return IntPoly();
  IntPoly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

IntPoly IntPoly::shifted(int e) const {
  if (e < 0) throw std::invalid_argument("shifted: negative exponent");
  if (is_zero() || e == 0) return *this;
  std::vector<mpz_class> r(c_.size() + e, kZero);
  for (size_t i = 0; i < c_.size(); ++i) r[i + e] = c_[i];
  return IntPoly(std::move(r));
}

mpq_class IntPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + mpq_class(*it);
  return acc;
}

mpz_class IntPoly::eval(const mpz_class& x) const {
  mpz_class acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double IntPoly::eval(double x) const {
  double acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

std::complex<double> IntPoly::eval(std::complex<double> x) const {
  std::complex<double> acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
  return acc;
}

int IntPoly::sign_at_dyadic(const mpz_class& a, unsigned e) const {
  // p(a/2^e) has the sign of sum c_i a^i 2^{e(d-i)}.
  if (is_zero()) return 0;
  mpz_class acc = 0;
  mpz_class scale = 1;  // 2^{e(d-i)} built from the top down
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * a + *it * scale;
    if (it + 1 != c_.rend()) mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), e);
  }
  return sgn(acc);
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<mpz_class> r(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return IntPoly(std::move(r));
}

mpz_class IntPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  mpz_class g = content();
  if (leading() < 0) g = -g;
  IntPoly r = *this;
  for (auto& x : r.c_) x /= g;
  return r;
}

bool IntPoly::divide_exact(const IntPoly& num, const IntPoly& den, IntPoly& q) {
  if (den.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  if (num.is_zero()) {
    q = IntPoly();
    return true;
  }
  if (num.degree() < den.degree()) return false;
  std::vector<mpz_class> rem = num.c_;
  std::vector<mpz_class> quot(num.degree() - den.degree() + 1, 0);
  const mpz_class& lead = den.leading();
  for (int i = num.degree(); i >= den.degree();) {
    if (rem[i] == 0) {
      --i;
      continue;
    }
    mpz_class f, r0;
    mpz_fdiv_qr(f.get_mpz_t(), r0.get_mpz_t(), rem[i].get_mpz_t(), lead.get_mpz_t());
    if (r0 != 0) return false;
    int off = i - den.degree();
    quot[off] = f;
    for (int j = 0; j <= den.degree(); ++j) rem[j + off] -= f * den.c_[j];
    --i;
  }
  for (const auto& x : rem)
    if (x != 0) return false;
  q = IntPoly(std::move(quot));
  return true;
}

// Pseudo-remainder: rem(lc(g)^(deg f - deg g + 1) * f, g), computed in Z[t].
static IntPoly pseudo_rem(const IntPoly& f, const IntPoly& g) {
  IntPoly r = f;
  const int dg = g.degree();
  const mpz_class& lg = g.leading();
  while (!r.is_zero() && r.degree() >= dg) {
    int d = r.degree() - dg;
    IntPoly t = g.shifted(d).scaled(r.leading());
    r = r.scaled(lg) - t;
  }
  // Equals the textbook pseudo-remainder up to a (possibly negative) power of
  // lc(g); callers normalize via primitive_part, so only gcd uses this.
  return r;
}

IntPoly IntPoly::gcd(IntPoly a, IntPoly b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  a = a.primitive_part();
  b = b.primitive_part();
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    IntPoly r = pseudo_rem(a, b).primitive_part();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

IntPoly IntPoly::pow(const IntPoly& base, unsigned e) {
  IntPoly r = IntPoly::constant(1);
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

std::string IntPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const mpz_class& c = c_[i];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool unit = (a == 1);
    if (i == 0) {
      os << a.get_str();
    } else {
      if (!unit) os << a.get_str() << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

IntPoly monic_normalize(IntPoly p) {
  if (p.is_zero()) throw std::logic_error("monic_normalize: zero polynomial");
  if (p.leading() == -1) return -p;
  if (p.leading() != 1)
    throw std::logic_error("monic_normalize: leading coefficient " + p.leading().get_str() +
                           " is not a unit");
  return p;
}

}  // namespace sft
