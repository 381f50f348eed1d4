#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <vector>

namespace sft {

// Thrown by the 64-bit instantiation when a reduced entry would leave the
// safe range.  Callers retry the whole computation with the mpz_class
// instantiation, which never throws this.
struct ReduceOverflow : std::runtime_error {
  ReduceOverflow() : std::runtime_error("exact row reduction left the 64-bit safe range") {}
};

namespace rowdetail {

inline __int128 abs128(__int128 v) { return v < 0 ? -v : v; }

inline __int128 gcd128(__int128 a, __int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

template <class Z>
struct Ops;

template <>
struct Ops<long long> {
  using Wide = __int128;
  static Wide widen(long long v) { return v; }
  static long long narrow(Wide v) {
    constexpr __int128 lim = static_cast<__int128>(1) << 62;
    if (v >= lim || v <= -lim) throw ReduceOverflow{};
    return static_cast<long long>(v);
  }
  static Wide gcd(Wide a, Wide b) { return gcd128(a, b); }
};

template <>
struct Ops<mpz_class> {
  using Wide = mpz_class;
  static const mpz_class& widen(const mpz_class& v) { return v; }
  static mpz_class narrow(mpz_class v) { return v; }
  static mpz_class gcd(const mpz_class& a, const mpz_class& b) {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
};

inline mpz_class to_mpz(long long v) {
  static_assert(sizeof(long) == sizeof(long long), "LP64 assumed");
  return mpz_class(static_cast<long>(v));
}
inline const mpz_class& to_mpz(const mpz_class& v) { return v; }

}  // namespace rowdetail

// Maintains a list of generator vectors over Z in eliminated form.  Each
// stored row carries an augmented block recording the integer combination of
// generators it came from, so a dependence can be converted into exact
// rational coefficients over the generators.  Rows are kept primitive: after
// every combination the row is divided by the gcd of all its entries.
//
// Rows are stored and applied in insertion order.  Every stored row was fully
// eliminated against its predecessors, so sweeping a candidate through the
// rows in that order zeroes all pivot columns for good.
template <class Z>
class RowSolver {
 public:
  RowSolver(int main_width, int max_generators) : width_(main_width), cap_(max_generators) {
    if (main_width <= 0 || max_generators < 0)
      throw std::invalid_argument("RowSolver: bad dimensions");
  }

  int generators() const { return gens_; }
  int main_width() const { return width_; }

  // Tries to append v as a generator.  If v is independent of the current
  // generators it is inserted and nullopt is returned; otherwise the exact
  // coefficients expressing v over the generators are returned and the
  // solver is left unchanged.
  std::optional<std::vector<mpq_class>> try_add(const std::vector<Z>& v) {
    if (gens_ == cap_) throw std::logic_error("RowSolver: generator capacity exceeded");
    std::vector<Z> e = eliminated(v);
    int piv = first_nonzero_main(e);
    if (piv < 0) return coefficients(e);
    normalize(e, piv);
    rows_.push_back(Row{std::move(e), piv});
    ++gens_;
    return std::nullopt;
  }

  // Coefficients expressing x over the generators, or nullopt if x lies
  // outside their span.  Never modifies the solver.
  std::optional<std::vector<mpq_class>> reduce(const std::vector<Z>& x) const {
    std::vector<Z> e = eliminated(x);
    if (first_nonzero_main(e) >= 0) return std::nullopt;
    return coefficients(e);
  }

 private:
  using Wide = typename rowdetail::Ops<Z>::Wide;

  struct Row {
    std::vector<Z> e;  // [0,width_) main, then one aug column per generator slot
    int pivot;
  };

  int total_width() const { return width_ + cap_ + 1; }

  std::vector<Z> eliminated(const std::vector<Z>& v) const {
    if (static_cast<int>(v.size()) != width_)
      throw std::invalid_argument("RowSolver: vector width mismatch");
    std::vector<Z> e(total_width());
    for (int i = 0; i < width_; ++i) e[i] = v[i];
    e[width_ + gens_] = 1;  // the candidate's own aug column
    for (const Row& row : rows_) {
      if (e[row.pivot] == 0) continue;
      combine(e, row.e, row.pivot);
    }
    return e;
  }

  // e := (p*e - q*row) / content, with p the pivot entry of row, q = e[pivot].
  void combine(std::vector<Z>& e, const std::vector<Z>& row, int pivot) const {
    const int w = total_width();
    const Wide p = rowdetail::Ops<Z>::widen(row[pivot]);
    const Wide q = rowdetail::Ops<Z>::widen(e[pivot]);
    std::vector<Wide> t(w);
    Wide g = 0;
    for (int i = 0; i < w; ++i) {
      t[i] = p * rowdetail::Ops<Z>::widen(e[i]) - q * rowdetail::Ops<Z>::widen(row[i]);
      if (g != 1 && t[i] != 0) g = rowdetail::Ops<Z>::gcd(g, t[i]);
    }
    if (g == 0) g = 1;
    for (int i = 0; i < w; ++i) e[i] = rowdetail::Ops<Z>::narrow(g == 1 ? t[i] : t[i] / g);
  }

  int first_nonzero_main(const std::vector<Z>& e) const {
    for (int i = 0; i < width_; ++i)
      if (e[i] != 0) return i;
    return -1;
  }

  // Divide a fresh row by its content and give the pivot a positive sign.
  void normalize(std::vector<Z>& e, int pivot) const {
    const int w = total_width();
    Wide g = 0;
    for (int i = 0; i < w && g != 1; ++i)
      if (e[i] != 0) g = rowdetail::Ops<Z>::gcd(g, rowdetail::Ops<Z>::widen(e[i]));
    const bool flip = e[pivot] < 0;
    for (int i = 0; i < w; ++i) {
      Wide t = rowdetail::Ops<Z>::widen(e[i]);
      if (g > 1) t = t / g;
      if (flip) t = -t;
      e[i] = rowdetail::Ops<Z>::narrow(t);
    }
  }

  // The eliminated row satisfies 0 = lam*v + sum_j aug_j * gen_j with lam the
  // candidate's aug entry, so v = sum_j (-aug_j/lam) gen_j.
  std::vector<mpq_class> coefficients(const std::vector<Z>& e) const {
    const mpq_class lam(rowdetail::to_mpz(e[width_ + gens_]));
    if (lam == 0) throw std::logic_error("RowSolver: vanished candidate multiplier");
    std::vector<mpq_class> c(gens_);
    for (int j = 0; j < gens_; ++j) {
      mpq_class num(rowdetail::to_mpz(e[width_ + j]));
      c[j] = -num / lam;
    }
    return c;
  }

  int width_;
  int cap_;
  int gens_ = 0;
  std::vector<Row> rows_;
};

}  // namespace sft
