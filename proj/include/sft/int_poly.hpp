// Dense univariate polynomials over arbitrary-precision integers.
//
// Coefficients are stored in ascending degree order (index == exponent) and
// kept trimmed, so degree() is always the true degree (-1 for the zero
// polynomial).  All arithmetic is exact; evaluation is offered over exact
// rationals and, for sampling only, over double / complex<double>.

#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace sft {

class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<mpz_class> ascending) : c_(std::move(ascending)) { trim(); }

  // Ascending-degree list: of({-1, -1, 1}) is t^2 - t - 1.
  static IntPoly of(std::initializer_list<long> ascending);
  static IntPoly constant(mpz_class c);
  static IntPoly monomial(int deg, mpz_class coeff = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const mpz_class& coeff(int i) const;  // zero beyond the degree
  const mpz_class& leading() const;     // requires a nonzero polynomial
  const std::vector<mpz_class>& coeffs() const { return c_; }

  IntPoly operator-() const;
  IntPoly& operator+=(const IntPoly& o);
  IntPoly& operator-=(const IntPoly& o);
  friend IntPoly operator+(IntPoly a, const IntPoly& b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly& b) { return a -= b; }
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  IntPoly& operator*=(const IntPoly& o) { return *this = *this * o; }
  IntPoly scaled(const mpz_class& s) const;
  IntPoly shifted(int e) const;  // multiply by t^e
  friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }

  mpq_class eval(const mpq_class& x) const;
  mpz_class eval(const mpz_class& x) const;
  double eval(double x) const;
  std::complex<double> eval(std::complex<double> x) const;
  // Sign of p(a / 2^e) computed without rationals: -1, 0, +1.
  int sign_at_dyadic(const mpz_class& a, unsigned e) const;

  IntPoly derivative() const;
  mpz_class content() const;         // gcd of coefficients, >= 0; 0 for the zero poly
  IntPoly primitive_part() const;    // content divided out, leading coefficient > 0

  // Exact division: q with num == den*q, or false if den does not divide num.
  static bool divide_exact(const IntPoly& num, const IntPoly& den, IntPoly& q);
  // Primitive polynomial gcd (subresultant-free pseudo-remainder chain).
  static IntPoly gcd(IntPoly a, IntPoly b);
  static IntPoly pow(const IntPoly& base, unsigned e);

  // "t^3 - t^2 + 2*t - 1"; the canonical display used by the CLI and tests.
  std::string to_string(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<mpz_class> c_;
};

// Flips the sign when the leading coefficient is -1 so characteristic
// polynomials come out monic; any other non-monic leading coefficient is a
// caller bug and throws.
IntPoly monic_normalize(IntPoly p);

}  // namespace sft
