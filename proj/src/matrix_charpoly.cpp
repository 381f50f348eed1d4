#include "sft/matrix_charpoly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "sft/poly_matrix.hpp"

namespace sft {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 p) { return (u64)((u128)a * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
  u64 r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) d >>= 1, ++s;
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a % n, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// 62-bit primes, generated downward on demand and cached.
const std::vector<u64>& prime_pool(size_t count) {
  static std::vector<u64> pool;
  static u64 next = (1ULL << 62) - 1;
  while (pool.size() < count) {
    while (!is_prime_u64(next)) next -= 2;
    pool.push_back(next);
    next -= 2;
  }
  return pool;
}

// Sparse column-major view: per column, the (row, value) pairs mod p.
struct SparseCols {
  int n;
  std::vector<std::vector<std::pair<int, u64>>> cols;
};

SparseCols sparse_mod(const IntMatrix& m, u64 p) {
  int n = (int)m.size();
  SparseCols s;
  s.n = n;
  s.cols.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long long v = m[i][j] % (long long)p;
      if (v < 0) v += (long long)p;
      if (v) s.cols[j].push_back({i, (u64)v});
    }
  return s;
}

std::vector<u64> apply_sparse(const SparseCols& m, const std::vector<u64>& x, u64 p) {
  std::vector<u64> y(m.n, 0);
  for (int j = 0; j < m.n; ++j) {
    u64 xj = x[j];
    if (!xj) continue;
    for (const auto& [i, v] : m.cols[j]) {
      y[i] = (y[i] + mulmod(v, xj, p)) % p;
    }
  }
  return y;
}

// Reduced column-echelon basis built incrementally; pivot rows carry a unit
// entry and vanish in every other basis column, so coordinates in the basis
// can be read off directly.
struct Echelon {
  u64 p;
  std::vector<std::vector<u64>> basis;
  std::vector<int> pivots;

  explicit Echelon(u64 prime) : p(prime) {}

  void eliminate(std::vector<u64>& v) const {
    for (size_t b = 0; b < basis.size(); ++b) {
      u64 c = v[pivots[b]];
      if (!c) continue;
      const auto& col = basis[b];
      for (size_t i = 0; i < v.size(); ++i)
        if (col[i]) v[i] = (v[i] + (p - mulmod(c, col[i], p))) % p;
    }
  }

  bool add(std::vector<u64> v) {
    eliminate(v);
    int piv = -1;
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i]) {
        piv = (int)i;
        break;
      }
    if (piv < 0) return false;
    u64 inv = invmod(v[piv], p);
    for (auto& x : v) x = mulmod(x, inv, p);
    for (size_t b = 0; b < basis.size(); ++b) {
      u64 c = basis[b][piv];
      if (!c) continue;
      for (size_t i = 0; i < v.size(); ++i)
        if (v[i]) basis[b][i] = (basis[b][i] + (p - mulmod(c, v[i], p))) % p;
    }
    basis.push_back(std::move(v));
    pivots.push_back(piv);
    return true;
  }
};

// Monic char poly of a dense matrix mod p via Hessenberg reduction.
std::vector<u64> hessenberg_charpoly(std::vector<std::vector<u64>> h, u64 p) {
  int n = (int)h.size();
  for (int j = 0; j + 2 < n; ++j) {
    int piv = -1;
    for (int i = j + 1; i < n; ++i)
      if (h[i][j]) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != j + 1) {
      std::swap(h[piv], h[j + 1]);
      for (int i = 0; i < n; ++i) std::swap(h[i][piv], h[i][j + 1]);
    }
    u64 inv = invmod(h[j + 1][j], p);
    for (int i = j + 2; i < n; ++i) {
      u64 f = mulmod(h[i][j], inv, p);
      if (!f) continue;
      for (int c = j; c < n; ++c)
        h[i][c] = (h[i][c] + (p - mulmod(f, h[j + 1][c], p))) % p;
      for (int r = 0; r < n; ++r) h[r][j + 1] = (h[r][j + 1] + mulmod(f, h[r][i], p)) % p;
    }
  }
  // det(tI - H) by the leading-principal-minor recurrence.
  std::vector<std::vector<u64>> q(n + 1);
  q[0] = {1};
  for (int m = 1; m <= n; ++m) {
    const auto& prev = q[m - 1];
    std::vector<u64> cur(m + 1, 0);
    u64 diag = h[m - 1][m - 1];
    for (int i = 0; i < m; ++i) {
      cur[i + 1] = (cur[i + 1] + prev[i]) % p;
      if (diag) cur[i] = (cur[i] + (p - mulmod(diag, prev[i], p))) % p;
    }
    u64 prod = 1;
    for (int i = m - 1; i >= 1; --i) {
      prod = mulmod(prod, h[i][i - 1], p);
      if (!prod) break;
      u64 c = mulmod(prod, h[i - 1][m - 1], p);
      if (!c) continue;
      const auto& qi = q[i - 1];
      for (size_t t = 0; t < qi.size(); ++t)
        cur[t] = (cur[t] + (p - mulmod(c, qi[t], p))) % p;
    }
    q[m] = std::move(cur);
  }
  return q[n];
}

// Char poly of M mod p: stabilize the image of M, restrict, then Hessenberg.
std::vector<u64> charpoly_mod(const IntMatrix& m, u64 p) {
  int n = (int)m.size();
  SparseCols sc = sparse_mod(m, p);

  Echelon ech(p);
  for (int j = 0; j < n; ++j) {
    std::vector<u64> col(n, 0);
    for (const auto& [i, v] : sc.cols[j]) col[i] = v;
    ech.add(std::move(col));
  }
  if ((int)ech.basis.size() == n) {
    std::vector<std::vector<u64>> dense(n, std::vector<u64>(n, 0));
    for (int j = 0; j < n; ++j)
      for (const auto& [i, v] : sc.cols[j]) dense[i][j] = v;
    return hessenberg_charpoly(std::move(dense), p);
  }

  // Iterate images until the rank stops dropping: im M^{j+1} is always
  // contained in im M^j, so equal ranks certify stabilization.
  while (true) {
    Echelon next(p);
    for (const auto& b : ech.basis) next.add(apply_sparse(sc, b, p));
    if (next.basis.size() == ech.basis.size()) break;
    ech = std::move(next);
  }

  int u = (int)ech.basis.size();
  std::vector<std::vector<u64>> r(u, std::vector<u64>(u, 0));
  for (int c = 0; c < u; ++c) {
    std::vector<u64> y = apply_sparse(sc, ech.basis[c], p);
    std::vector<u64> coeff(u);
    for (int b = 0; b < u; ++b) coeff[b] = y[ech.pivots[b]];
    // Confirm membership: the stable image is invariant by construction.
    std::vector<u64> check(n, 0);
    for (int b = 0; b < u; ++b)
      if (coeff[b])
        for (int i = 0; i < n; ++i)
          if (ech.basis[b][i]) check[i] = (check[i] + mulmod(coeff[b], ech.basis[b][i], p)) % p;
    if (check != y) throw std::logic_error("matrix_charpoly: stable image is not invariant");
    for (int b = 0; b < u; ++b) r[b][c] = coeff[b];
  }

  std::vector<u64> core = hessenberg_charpoly(std::move(r), p);
  std::vector<u64> out(n + 1, 0);
  for (int i = 0; i <= u; ++i) out[n - u + i] = core[i];
  return out;
}

// Hadamard-style bound (in bits) on any coefficient of det(tI - M): the
// degree-(n-s) coefficient is a signed sum of C(n,s) principal s-minors.
double coeff_bound_bits(const IntMatrix& m) {
  int n = (int)m.size();
  std::vector<double> lognorm(n);
  for (int j = 0; j < n; ++j) {
    double s2 = 0;
    for (int i = 0; i < n; ++i) s2 += (double)m[i][j] * (double)m[i][j];
    lognorm[j] = s2 > 1.0 ? 0.5 * std::log2(s2) : 0.0;
  }
  std::sort(lognorm.rbegin(), lognorm.rend());
  double best = 0, prefix = 0;
  for (int s = 1; s <= n; ++s) {
    prefix += lognorm[s - 1];
    double binom =
        (std::lgamma(n + 1.0) - std::lgamma(s + 1.0) - std::lgamma(n - s + 1.0)) / std::log(2.0);
    best = std::max(best, binom + prefix);
  }
  return best + 1.0;  // sign bit
}

mpz_class z_of(u64 v) {
  static_assert(sizeof(unsigned long) == 8, "needs 64-bit unsigned long");
  return mpz_class((unsigned long)v);
}

IntPoly modular_charpoly(const IntMatrix& m) {
  int n = (int)m.size();
  size_t count = (size_t)(coeff_bound_bits(m) / 61.0) + 2;
  const auto& primes = prime_pool(count + 1);

  std::vector<mpz_class> lifted(n + 1, 0);
  mpz_class modulus = 1;
  for (size_t pi = 0; pi < count; ++pi) {
    u64 p = primes[pi];
    std::vector<u64> cp = charpoly_mod(m, p);
    if (pi == 0) {
      for (int i = 0; i <= n; ++i) lifted[i] = z_of(cp[i]);
    } else {
      // Incremental CRT: bump each coefficient by a multiple of the old
      // modulus chosen to hit the new residue.
      u64 minv = invmod(mpz_fdiv_ui(modulus.get_mpz_t(), p), p);
      for (int i = 0; i <= n; ++i) {
        u64 cur = mpz_fdiv_ui(lifted[i].get_mpz_t(), p);
        u64 add = mulmod((cp[i] + p - cur) % p, minv, p);
        if (add) lifted[i] += modulus * z_of(add);
      }
    }
    modulus *= z_of(p);
  }
  // Symmetric lift.
  mpz_class half = modulus / 2;
  for (auto& c : lifted)
    if (c > half) c -= modulus;

  // Independent spot check with one more prime.
  u64 q = primes[count];
  std::vector<u64> check = charpoly_mod(m, q);
  for (int i = 0; i <= n; ++i)
    if (mpz_fdiv_ui(lifted[i].get_mpz_t(), q) != check[i])
      throw std::logic_error("matrix_charpoly: checking prime disagrees with CRT lift");
  return IntPoly(std::move(lifted));
}

IntPoly elimination_charpoly(const IntMatrix& m) {
  int n = (int)m.size();
  PolyMatrix pm(n, std::vector<IntPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<mpz_class> c;
      c.push_back(mpz_class(m[i][j]));
      if (i == j) c.push_back(mpz_class(-1));
      pm[i][j] = IntPoly(std::move(c));  // M - t on the diagonal
    }
  return monic_normalize(poly_mat_det(pm));
}

}  // namespace

IntPoly matrix_charpoly(const IntMatrix& m, CharpolyMethod method, int dimension_cap) {
  int n = (int)m.size();
  if (n == 0) throw std::invalid_argument("matrix_charpoly: empty matrix");
  if (n > dimension_cap) throw std::invalid_argument("matrix_charpoly: dimension cap exceeded");
  for (const auto& row : m)
    if ((int)row.size() != n) throw std::invalid_argument("matrix_charpoly: not square");

  switch (method) {
    case CharpolyMethod::PolyElimination:
      return elimination_charpoly(m);
    case CharpolyMethod::Modular:
      return modular_charpoly(m);
    case CharpolyMethod::Auto:
    default:
      return n <= 24 ? elimination_charpoly(m) : modular_charpoly(m);
  }
}

}  // namespace sft
