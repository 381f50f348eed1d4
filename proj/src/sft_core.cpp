#include "sft/sft_core.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sft/poly_matrix.hpp"

namespace sft {

namespace {

std::string default_label(int i) { return std::string(1, static_cast<char>('a' + i)); }

void check_alphabet_size(int r) {
  if (r < 1 || r > 26) throw std::invalid_argument("alphabet size must be in [1, 26]");
}

// Vertices reachable from `start`, following edges forward (rev=false) or
// backward (rev=true).  Edge a -> b exists iff t[b][a] = 1.
std::vector<char> reachable(const SftSpec& spec, int start, bool rev) {
  std::vector<char> seen(spec.r, 0);
  std::vector<int> stack{start};
  seen[start] = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v = 0; v < spec.r; ++v) {
      int edge = rev ? spec.t[u][v] : spec.t[v][u];
      if (edge && !seen[v]) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return seen;
}

int graph_period(const SftSpec& spec) {
  // BFS levels from vertex 0; the period is the gcd of level[u]+1-level[v]
  // over all edges u -> v (standard for strongly connected digraphs).
  std::vector<int> level(spec.r, -1);
  std::vector<int> queue{0};
  level[0] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int v = 0; v < spec.r; ++v)
      if (spec.t[v][u] && level[v] < 0) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
  }
  int g = 0;
  for (int u = 0; u < spec.r; ++u)
    for (int v = 0; v < spec.r; ++v)
      if (spec.t[v][u]) g = std::gcd(g, level[u] + 1 - level[v]);
  return std::max(g, 1);
}

void append_words(const SftSpec& spec, int k, Word& cur, std::vector<Word>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int s = 0; s < spec.r; ++s) {
    if (!cur.empty() && !spec.allowed(cur.back(), s)) continue;
    cur.push_back(s);
    append_words(spec, k, cur, out);
    cur.pop_back();
  }
}

bool single_char_labels(const SftSpec& spec) {
  for (const auto& l : spec.labels)
    if (l.size() != 1) return false;
  return true;
}

}  // namespace

SftSpec full_shift(int r) {
  check_alphabet_size(r);
  SftSpec s;
  s.r = r;
  for (int i = 0; i < r; ++i) s.labels.push_back(default_label(i));
  s.t.assign(r, std::vector<int>(r, 1));
  return s;
}

SftSpec golden_mean_shift() {
  SftSpec s = full_shift(2);
  s.t[1][1] = 0;  // b never follows b
  return s;
}

SftSpec cycle_shift(int n) {
  check_alphabet_size(n);
  SftSpec s;
  s.r = n;
  for (int i = 0; i < n; ++i) s.labels.push_back(default_label(i));
  s.t.assign(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) s.t[(i + 1) % n][i] = 1;
  return s;
}

SftDescriptor validate_sft(const SftSpec& spec) {
  if (spec.r < 1) throw std::invalid_argument("alphabet must be nonempty");
  if (static_cast<int>(spec.labels.size()) != spec.r)
    throw std::invalid_argument("label count does not match alphabet size");
  std::set<std::string> uniq(spec.labels.begin(), spec.labels.end());
  if (static_cast<int>(uniq.size()) != spec.r)
    throw std::invalid_argument("symbol labels must be distinct");
  for (const auto& l : spec.labels)
    if (l.empty()) throw std::invalid_argument("symbol labels must be nonempty");
  if (static_cast<int>(spec.t.size()) != spec.r)
    throw std::invalid_argument("transition matrix must be r x r");
  for (const auto& row : spec.t) {
    if (static_cast<int>(row.size()) != spec.r)
      throw std::invalid_argument("transition matrix must be r x r");
    for (int e : row)
      if (e != 0 && e != 1) throw std::invalid_argument("transition entries must be 0 or 1");
  }
  for (int b = 0; b < spec.r; ++b) {
    int row_sum = 0, col_sum = 0;
    for (int a = 0; a < spec.r; ++a) {
      row_sum += spec.t[b][a];
      col_sum += spec.t[a][b];
    }
    if (row_sum == 0) throw std::invalid_argument("symbol '" + spec.labels[b] + "' never occurs");
    if (col_sum == 0)
      throw std::invalid_argument("symbol '" + spec.labels[b] + "' has no successor");
  }

  SftDescriptor d;
  std::vector<char> fwd = reachable(spec, 0, false);
  std::vector<char> bwd = reachable(spec, 0, true);
  d.irreducible = std::count(fwd.begin(), fwd.end(), 1) == spec.r &&
                  std::count(bwd.begin(), bwd.end(), 1) == spec.r;
  d.period = d.irreducible ? graph_period(spec) : 1;
  if (d.irreducible) {
    d.is_cycle = true;
    for (int b = 0; b < spec.r && d.is_cycle; ++b) {
      int row_sum = 0, col_sum = 0;
      for (int a = 0; a < spec.r; ++a) {
        row_sum += spec.t[b][a];
        col_sum += spec.t[a][b];
      }
      if (row_sum != 1 || col_sum != 1) d.is_cycle = false;
    }
  }
  if (d.is_cycle) d.lambda0 = 1.0;
  return d;
}

bool is_admissible(const SftSpec& spec, const Word& w) {
  if (w.empty()) return false;
  for (int s : w)
    if (s < 0 || s >= spec.r) return false;
  for (size_t i = 0; i + 1 < w.size(); ++i)
    if (!spec.allowed(w[i], w[i + 1])) return false;
  return true;
}

std::vector<Word> enumerate_admissible(const SftSpec& spec, int k) {
  if (k < 1) throw std::invalid_argument("word length must be positive");
  std::vector<Word> out;
  Word cur;
  append_words(spec, k, cur, out);
  return out;
}

std::vector<std::vector<mpz_class>> start_counts(const SftSpec& spec, int len) {
  if (len < 1) throw std::invalid_argument("length must be positive");
  std::vector<std::vector<mpz_class>> s(len, std::vector<mpz_class>(spec.r));
  for (int a = 0; a < spec.r; ++a) s[0][a] = 1;
  for (int j = 1; j < len; ++j)
    for (int a = 0; a < spec.r; ++a) {
      mpz_class acc = 0;
      for (int b = 0; b < spec.r; ++b)
        if (spec.t[b][a]) acc += s[j - 1][b];
      s[j][a] = acc;
    }
  return s;
}

mpz_class count_admissible(const SftSpec& spec, int k) {
  auto s = start_counts(spec, k);
  mpz_class total = 0;
  for (int a = 0; a < spec.r; ++a) total += s[k - 1][a];
  return total;
}

int h_index(const SftSpec& spec, const Word& w) {
  if (!is_admissible(spec, w)) throw std::invalid_argument("h_index: word not admissible");
  const int k = static_cast<int>(w.size());
  auto s = start_counts(spec, k);
  for (int h = 0; h < k; ++h)
    if (s[k - h - 1][w[h]] == 1) return h;
  throw std::logic_error("h_index: unreachable");  // s[0][*] == 1 always
}

namespace {

PolyMatrix t_minus_t(const SftSpec& spec) {
  PolyMatrix m(spec.r, std::vector<IntPoly>(spec.r));
  for (int i = 0; i < spec.r; ++i)
    for (int j = 0; j < spec.r; ++j) {
      m[i][j] = IntPoly::constant(spec.t[i][j]);
      if (i == j) m[i][j] -= IntPoly::monomial(1);
    }
  return m;
}

}  // namespace

IntPoly char_poly_T(const SftSpec& spec) { return monic_normalize(poly_mat_det(t_minus_t(spec))); }

IntPoly minor_poly(const SftSpec& spec, std::vector<int> delete_rows,
                   std::vector<int> delete_cols) {
  auto clean = [&](std::vector<int>& v, const char* what) {
    std::sort(v.begin(), v.end());
    if (std::adjacent_find(v.begin(), v.end()) != v.end())
      throw std::invalid_argument(std::string("minor_poly: duplicate ") + what);
    for (int x : v)
      if (x < 0 || x >= spec.r)
        throw std::invalid_argument(std::string("minor_poly: ") + what + " index out of range");
  };
  clean(delete_rows, "row");
  clean(delete_cols, "column");
  if (delete_rows.size() != delete_cols.size())
    throw std::invalid_argument("minor_poly: row and column sets must have equal size");

  PolyMatrix full = t_minus_t(spec);
  PolyMatrix m;
  for (int i = 0; i < spec.r; ++i) {
    if (std::binary_search(delete_rows.begin(), delete_rows.end(), i)) continue;
    std::vector<IntPoly> row;
    for (int j = 0; j < spec.r; ++j) {
      if (std::binary_search(delete_cols.begin(), delete_cols.end(), j)) continue;
      row.push_back(full[i][j]);
    }
    m.push_back(std::move(row));
  }
  return poly_mat_det(std::move(m));
}

SftSpec load_shift_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open shift file: " + path);
  std::vector<std::string> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream probe(raw);
    std::string tok;
    if (probe >> tok) lines.push_back(raw);
  }
  if (lines.empty()) throw std::invalid_argument(path + ": empty shift file");

  std::istringstream head(lines[0]);
  std::string kw;
  head >> kw;
  if (kw != "symbols:")
    throw std::invalid_argument(path + ": first line must start with 'symbols:'");
  SftSpec spec;
  std::string label;
  while (head >> label) spec.labels.push_back(label);
  spec.r = static_cast<int>(spec.labels.size());
  if (spec.r < 1) throw std::invalid_argument(path + ": no symbols listed");

  if (static_cast<int>(lines.size()) != spec.r + 1)
    throw std::invalid_argument(path + ": expected " + std::to_string(spec.r) +
                                " matrix rows after the symbol line");
  for (int i = 0; i < spec.r; ++i) {
    std::istringstream row(lines[i + 1]);
    std::vector<int> entries;
    int e;
    while (row >> e) entries.push_back(e);
    if (!row.eof()) throw std::invalid_argument(path + ": non-numeric matrix entry");
    if (static_cast<int>(entries.size()) != spec.r)
      throw std::invalid_argument(path + ": matrix row " + std::to_string(i + 1) + " needs " +
                                  std::to_string(spec.r) + " entries");
    for (int x : entries)
      if (x != 0 && x != 1) throw std::invalid_argument(path + ": matrix entries must be 0 or 1");
    spec.t.push_back(std::move(entries));
  }
  return spec;
}

std::string word_to_string(const SftSpec& spec, const Word& w) {
  const bool compact = single_char_labels(spec);
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= spec.r) throw std::invalid_argument("word symbol out of range");
    if (!compact && i) out += '.';
    out += spec.labels[w[i]];
  }
  return out;
}

Word parse_word(const SftSpec& spec, const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty word");
  Word w;
  if (single_char_labels(spec)) {
    for (char c : s) {
      int idx = -1;
      for (int i = 0; i < spec.r; ++i)
        if (spec.labels[i][0] == c) idx = i;
      if (idx < 0) throw std::invalid_argument(std::string("unknown symbol '") + c + "'");
      w.push_back(idx);
    }
    return w;
  }
  std::string token;
  std::istringstream in(s);
  while (std::getline(in, token, '.')) {
    auto it = std::find(spec.labels.begin(), spec.labels.end(), token);
    if (it == spec.labels.end())
      throw std::invalid_argument("unknown symbol '" + token + "'");
    w.push_back(static_cast<int>(it - spec.labels.begin()));
  }
  return w;
}

}  // namespace sft
