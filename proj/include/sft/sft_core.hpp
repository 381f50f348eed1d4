// Subshifts of finite type: the alphabet-and-transition-matrix model, word
// enumeration, determination indices, and exact minors of T - t.
#pragma once

#include <string>
#include <vector>

#include "sft/int_poly.hpp"

namespace sft {

// A word is a sequence of symbol indices in [0, r).
using Word = std::vector<int>;

struct SftSpec {
  int r = 0;
  std::vector<std::string> labels;        // r distinct printable names
  std::vector<std::vector<int>> t;        // t[b][a] == 1 iff b may follow a

  bool allowed(int from, int to) const { return t[to][from] != 0; }
};

struct SftDescriptor {
  bool irreducible = false;
  int period = 1;        // gcd of cycle lengths (= number of dominant eigenvalues)
  bool is_cycle = false;
  double lambda0 = 0.0;  // filled in by spectral code, not by validate_sft
};

// Canned shifts used throughout the tests and the bundled data files.
SftSpec full_shift(int r);
SftSpec golden_mean_shift();  // r=2, forbids b after b
SftSpec cycle_shift(int n);   // directed n-cycle

// Checks the structural invariants (0/1 entries, no dead symbols, unique
// labels) and reports strong connectivity, the period, and cycle-ness.
// Throws std::invalid_argument when an invariant fails.
SftDescriptor validate_sft(const SftSpec& spec);

bool is_admissible(const SftSpec& spec, const Word& w);

// All admissible k-words in lexicographic order of symbol indices.
std::vector<Word> enumerate_admissible(const SftSpec& spec, int k);

// Number of admissible k-words (the dimension of the span of such words);
// equals the sum of all entries of T^(k-1).
mpz_class count_admissible(const SftSpec& spec, int k);

// counts[j][a] = number of admissible words of length j+1 starting at symbol
// a, for j = 0..len-1.
std::vector<std::vector<mpz_class>> start_counts(const SftSpec& spec, int len);

// Least h >= 0 such that exactly one admissible |w|-word begins with
// w[0..h].  Always h <= |w|-1; rejects inadmissible words.
int h_index(const SftSpec& spec, const Word& w);

// Monic characteristic polynomial of the transition matrix.
IntPoly char_poly_T(const SftSpec& spec);

// Raw determinant of the submatrix of T - t obtained by deleting the given
// rows and columns (symbol indices; equal sizes required, everything deleted
// gives the constant 1).  No sign normalization.
IntPoly minor_poly(const SftSpec& spec, std::vector<int> delete_rows,
                   std::vector<int> delete_cols);

// Text format: first line `symbols: a b ...`, then r rows of space-separated
// 0/1 entries (row index = target symbol).  `#` starts a comment.
SftSpec load_shift_file(const std::string& path);

// Words print as concatenated labels when every label is a single
// character, and as dot-separated labels otherwise; parsing mirrors this.
std::string word_to_string(const SftSpec& spec, const Word& w);
Word parse_word(const SftSpec& spec, const std::string& s);

}  // namespace sft
