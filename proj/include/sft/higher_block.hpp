#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sft/row_reduce.hpp"
#include "sft/sft_core.hpp"

namespace sft {

// Coordinate vector over the admissible k-word basis.  Entries are walk
// counts, which stay far below 64 bits for the alphabet sizes and depths
// this library targets.
using StateVec = std::vector<long long>;

// The shift operator on the span of admissible k-words: entry (u,v) is 1
// exactly when u extends v by one symbol, i.e. u agrees with v shifted left.
// Stored as successor lists per column.
struct ShiftMatrixK {
  int k = 0;
  SftSpec base;
  std::vector<Word> states;            // admissible k-words in lex order
  std::vector<std::vector<int>> succ;  // succ[v] = rows u with entry (u,v)=1

  int n() const { return static_cast<int>(states.size()); }
  int state_index(const Word& w) const;  // -1 if w is not a state
  StateVec apply(const StateVec& x) const;
  StateVec unit(int index) const;
  long long ones() const;
};

ShiftMatrixK build_Tk(const SftSpec& spec, int k);

// Dense 0/1 copy, rows indexed like states; for the generic matrix oracles.
std::vector<std::vector<long long>> dense_matrix(const ShiftMatrixK& tk);

// Indicator vector of the admissible k-words that begin with the symbol.
StateVec psi_k(const SftSpec& spec, int k, int symbol);
StateVec psi_k(const ShiftMatrixK& tk, int symbol);

// One or two distinct admissible words of a common length k+1, marking the
// transitions to delete.
struct ForbidSet {
  std::vector<Word> words;
};

// Validates the set against the shift and returns k (word length minus one).
int validate_forbid_set(const SftSpec& spec, const ForbidSet& c);

// Deletes the transition of each forbidden word: entry (w minus first
// symbol, w minus last symbol) changes 1 -> 0.  Rejects words that are
// inadmissible, of the wrong length, or whose entry is already 0.
ShiftMatrixK apply_forbid(const ShiftMatrixK& tk, const ForbidSet& c);

enum class CaseTag { OneWord, Disjoint, CaseA, CaseB, CaseC };
std::string case_name(CaseTag tag);

// The invariant subspace generated by the indicator vectors psi and the
// iterates of the forbidden words' truncations, together with the exact
// relation that closes it up:
//
//   T^d2 [eta w2] = sum_m alpha_{i_m} T^{i_m} [eta w1] + gamma psi(b_{d2+1})
//
// d1 (resp. d2) is the least power at which the iterate of [eta w1] (resp.
// [eta w2]) falls into the span built so far; h1, h2 are the forced-extension
// indices of the truncations, and delta = h2 - d2.
struct InvariantBasis {
  SftSpec spec;
  int k = 0;
  Word w1;  // normalized so that h1 <= h2, ties broken lexicographically
  Word w2;  // empty in the one-word case
  int d1 = 0;
  int h1 = 0;
  std::optional<int> d2;
  int h2 = 0;
  int gamma = 0;
  std::map<int, long> alphas;  // exponent i_m -> alpha_{i_m}, nonzero only
  int delta = 0;
  CaseTag case_tag = CaseTag::OneWord;
  std::vector<StateVec> basis_vectors;  // psi's, then powers of [eta w1], then of [eta w2]
};

InvariantBasis invariant_basis(const SftSpec& spec, int k, const ForbidSet& c);
InvariantBasis invariant_basis(const ShiftMatrixK& tk, const ForbidSet& c);

// Cached single-word stage: the solver spanning the psi's and the iterates
// of [eta w1], reusable across many second words.  Pairs must already be in
// normalized order (h(eta w1), w1) <= (h(eta w2), w2).
struct W1Space {
  Word w1;
  int h1 = 0;
  int d1 = 0;
  RowSolver<long long> solver;
  std::vector<StateVec> basis;  // psi's, then powers of [eta w1]
};

W1Space build_w1_space(const ShiftMatrixK& tk, const Word& w1);
InvariantBasis invariant_basis_with(const ShiftMatrixK& tk, const W1Space& w1s, const Word& w2);

struct CaseCondition {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct CaseReport {
  CaseTag tag = CaseTag::OneWord;
  std::vector<CaseCondition> conditions;
  bool all_pass() const;
};

// Re-derives the structural consequences of the two-word case taxonomy on a
// concrete instance and checks each one, reporting per-condition pass/fail.
// Failures are reported, not thrown: a failure would falsify the structure
// theory on this instance.
CaseReport classify_pair(const InvariantBasis& basis, const ForbidSet& c);

// Multi-line diagnostic rendering of a basis, for the CLI.
std::string describe(const InvariantBasis& basis);

}  // namespace sft
