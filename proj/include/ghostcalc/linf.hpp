#pragma once

// Bracket families l_n (graded-symmetric) and m_k (ordered), representation
// families rho_k, and the direct structure-equation checkers. Two summation
// modes are provided everywhere a symmetric sum appears: the economical
// position-unshuffle form used by default, and the full symmetric-group form
// with factorial weights kept as an independent cross-check.

#include "ghostcalc/graded.hpp"
#include "ghostcalc/rational.hpp"

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace ghostcalc {

constexpr int kDefaultMaxArity = 6;

struct FamilyEntry {
  std::vector<int> inputs;
  std::map<int, Rat> outputs;  // generator index -> coefficient
};

// skew = true: graded-symmetric family (exchange law = the ring's swap
// signs); storage canonicalizes to sorted tuples. skew = false: ordered
// family, tuples stored literally.
struct BracketFamily {
  bool skew = true;
  std::vector<FamilyEntry> raw;
  std::map<std::vector<int>, Vec> table;
  int max_arity = 0;
  bool validated = false;

  bool is_zero() const { return table.empty(); }

  std::set<int> arities() const {
    std::set<int> a;
    for (auto& [t, _] : table) a.insert(static_cast<int>(t.size()));
    return a;
  }
};

struct RepEntry {
  std::vector<int> inputs;
  Mat matrix;
};

struct RepresentationFamily {
  bool skew = true;
  int module_dim = 0;
  std::vector<RepEntry> raw;
  std::map<std::vector<int>, Mat> table;
  int max_arity = 0;
  bool validated = false;

  bool is_zero() const { return table.empty(); }

  std::set<int> arities() const {
    std::set<int> a;
    for (auto& [t, _] : table) a.insert(static_cast<int>(t.size()));
    return a;
  }
};

inline std::string tuple_names(const GradedBasis& b,
                               const std::vector<int>& t) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) os << ",";
    if (t[i] >= 0 && t[i] < b.dim())
      os << b.name(t[i]);
    else
      os << "#" << t[i];  // diagnostics may label out-of-range entries
  }
  os << ")";
  return os.str();
}

inline std::string vec_witness(const GradedBasis& b, const Vec& v) {
  std::ostringstream os;
  bool first = true;
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (v(j) == 0) continue;
    if (!first) os << ", ";
    first = false;
    os << b.name(static_cast<int>(j)) << ": " << rat_to_string(v(j));
  }
  return first ? "0" : os.str();
}

inline std::string mat_witness(const Mat& m) {
  std::ostringstream os;
  bool first = true;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (m(r, c) == 0) continue;
      if (!first) os << ", ";
      first = false;
      os << "(" << r << "," << c << "): " << rat_to_string(m(r, c));
    }
  return first ? "0" : os.str();
}

namespace detail {

inline bool indices_in_range(const GradedBasis& b,
                             const std::vector<int>& t) {
  for (int i : t)
    if (i < 0 || i >= b.dim()) return false;
  return true;
}

inline std::string entry_label(const GradedBasis& b,
                               const std::vector<int>& inputs,
                               std::size_t idx) {
  std::ostringstream os;
  os << "entry #" << idx << " " << tuple_names(b, inputs);
  return os.str();
}

}  // namespace detail

// Validates raw entries and builds the evaluation table. Checks performed:
// index ranges, arity bounds, degree homogeneity (nonzero output j requires
// vdeg_j = sum of input vdegs + arity - 2), duplicate tuples, and for skew
// families the exchange-law consistency across reordered entries plus the
// forced vanishing on tuples that repeat a square-zero generator.
inline std::vector<std::string> validate_family(
    const GradedBasis& b, BracketFamily& f,
    int max_arity = kDefaultMaxArity) {
  std::vector<std::string> errors;
  f.table.clear();
  f.max_arity = 0;
  f.validated = false;
  // canonical key -> (raw entry index, literal inputs, canonical value)
  std::map<std::vector<int>, std::pair<std::size_t, Vec>> seen;
  std::set<std::vector<int>> literal_seen;
  for (std::size_t e = 0; e < f.raw.size(); ++e) {
    const FamilyEntry& en = f.raw[e];
    const int arity = static_cast<int>(en.inputs.size());
    const std::string label = detail::entry_label(b, en.inputs, e);
    if (arity < 1) {
      errors.push_back(label + ": arity must be at least 1");
      continue;
    }
    if (arity > max_arity) {
      errors.push_back(label + ": arity " + std::to_string(arity) +
                       " exceeds the tracked maximum " +
                       std::to_string(max_arity));
      continue;
    }
    if (!detail::indices_in_range(b, en.inputs)) {
      errors.push_back(label + ": generator index out of range");
      continue;
    }
    bool outputs_ok = true;
    int in_vdeg = 0;
    for (int i : en.inputs) in_vdeg += b.vdeg(i);
    for (auto& [j, c] : en.outputs) {
      if (j < 0 || j >= b.dim()) {
        errors.push_back(label + ": output index out of range");
        outputs_ok = false;
        break;
      }
      if (c != 0 && b.vdeg(j) != in_vdeg + arity - 2) {
        errors.push_back(label + ": output " + b.name(j) +
                         " violates degree homogeneity (expected vdeg " +
                         std::to_string(in_vdeg + arity - 2) + ", got " +
                         std::to_string(b.vdeg(j)) + ")");
        outputs_ok = false;
      }
    }
    if (!outputs_ok) continue;
    if (!literal_seen.insert(en.inputs).second) {
      errors.push_back(label + ": duplicate tuple");
      continue;
    }
    Vec value = zero_vec(b.dim());
    for (auto& [j, c] : en.outputs) value(j) += c;

    if (!f.skew) {
      f.table[en.inputs] = value;
      continue;
    }
    SortedWord s = sort_with_sign(b, en.inputs);
    if (s.zero) {
      if (!is_zero(value))
        errors.push_back(label +
                         ": tuple repeats a square-zero generator, so the "
                         "exchange law forces the value to vanish");
      continue;
    }
    Vec canon = (value * Rat(s.sign)).eval();
    auto it = seen.find(s.word);
    if (it == seen.end()) {
      seen.emplace(s.word, std::make_pair(e, canon));
      f.table[s.word] = canon;
    } else if (!is_zero((canon - it->second.second).eval())) {
      errors.push_back(label + ": exchange-law conflict with entry #" +
                       std::to_string(it->second.first) + " " +
                       tuple_names(b, f.raw[it->second.first].inputs));
    }
  }
  // drop identically-zero rows so emptiness means the zero family
  for (auto it = f.table.begin(); it != f.table.end();)
    it = is_zero(it->second) ? f.table.erase(it) : std::next(it);
  for (auto& [t, _] : f.table)
    f.max_arity = std::max(f.max_arity, static_cast<int>(t.size()));
  f.validated = errors.empty();
  return errors;
}

inline std::vector<std::string> validate_representation(
    const GradedBasis& b, RepresentationFamily& r,
    int max_arity = kDefaultMaxArity) {
  std::vector<std::string> errors;
  r.table.clear();
  r.max_arity = 0;
  r.validated = false;
  if (r.module_dim < 0) errors.push_back("module dimension must be >= 0");
  std::map<std::vector<int>, std::pair<std::size_t, Mat>> seen;
  std::set<std::vector<int>> literal_seen;
  for (std::size_t e = 0; e < r.raw.size(); ++e) {
    const RepEntry& en = r.raw[e];
    const int arity = static_cast<int>(en.inputs.size());
    const std::string label = detail::entry_label(b, en.inputs, e);
    if (arity < 1) {
      errors.push_back(label + ": arity must be at least 1");
      continue;
    }
    if (arity > max_arity) {
      errors.push_back(label + ": arity " + std::to_string(arity) +
                       " exceeds the tracked maximum " +
                       std::to_string(max_arity));
      continue;
    }
    if (!detail::indices_in_range(b, en.inputs)) {
      errors.push_back(label + ": generator index out of range");
      continue;
    }
    if (en.matrix.rows() != r.module_dim || en.matrix.cols() != r.module_dim) {
      errors.push_back(label + ": matrix must be " +
                       std::to_string(r.module_dim) + "x" +
                       std::to_string(r.module_dim));
      continue;
    }
    if (!literal_seen.insert(en.inputs).second) {
      errors.push_back(label + ": duplicate tuple");
      continue;
    }
    if (!r.skew) {
      r.table[en.inputs] = en.matrix;
      continue;
    }
    SortedWord s = sort_with_sign(b, en.inputs);
    if (s.zero) {
      if (!is_zero(en.matrix))
        errors.push_back(label +
                         ": tuple repeats a square-zero generator, so the "
                         "exchange law forces the value to vanish");
      continue;
    }
    Mat canon = (en.matrix * Rat(s.sign)).eval();
    auto it = seen.find(s.word);
    if (it == seen.end()) {
      seen.emplace(s.word, std::make_pair(e, canon));
      r.table[s.word] = canon;
    } else if (!is_zero((canon - it->second.second).eval())) {
      errors.push_back(label + ": exchange-law conflict with entry #" +
                       std::to_string(it->second.first) + " " +
                       tuple_names(b, r.raw[it->second.first].inputs));
    }
  }
  for (auto it = r.table.begin(); it != r.table.end();)
    it = is_zero(it->second) ? r.table.erase(it) : std::next(it);
  for (auto& [t, _] : r.table)
    r.max_arity = std::max(r.max_arity, static_cast<int>(t.size()));
  r.validated = errors.empty();
  return errors;
}

inline Vec bracket_eval(const GradedBasis& b, const BracketFamily& f,
                        const std::vector<int>& tuple) {
  if (!f.skew) {
    auto it = f.table.find(tuple);
    return it == f.table.end() ? zero_vec(b.dim()) : it->second;
  }
  SortedWord s = sort_with_sign(b, tuple);
  if (s.zero) return zero_vec(b.dim());
  auto it = f.table.find(s.word);
  if (it == f.table.end()) return zero_vec(b.dim());
  return (it->second * Rat(s.sign)).eval();
}

// Evaluation with one argument slot holding a linear combination: the
// combination sits between `pre` and `post`.
inline Vec bracket_eval_insert(const GradedBasis& b, const BracketFamily& f,
                               const std::vector<int>& pre, const Vec& mid,
                               const std::vector<int>& post) {
  Vec acc = zero_vec(b.dim());
  std::vector<int> tuple(pre);
  tuple.push_back(0);
  tuple.insert(tuple.end(), post.begin(), post.end());
  for (Eigen::Index j = 0; j < mid.size(); ++j) {
    if (mid(j) == 0) continue;
    tuple[pre.size()] = static_cast<int>(j);
    acc += bracket_eval(b, f, tuple) * mid(j);
  }
  return acc;
}

inline Mat rep_eval(const GradedBasis& b, const RepresentationFamily& r,
                    const std::vector<int>& tuple) {
  const Mat zero = zero_mat(r.module_dim, r.module_dim);
  if (!r.skew) {
    auto it = r.table.find(tuple);
    return it == r.table.end() ? zero : it->second;
  }
  SortedWord s = sort_with_sign(b, tuple);
  if (s.zero) return zero;
  auto it = r.table.find(s.word);
  if (it == r.table.end()) return zero;
  return (it->second * Rat(s.sign)).eval();
}

inline Mat rep_eval_insert(const GradedBasis& b,
                           const RepresentationFamily& r,
                           const std::vector<int>& pre, const Vec& mid,
                           const std::vector<int>& post) {
  Mat acc = zero_mat(r.module_dim, r.module_dim);
  std::vector<int> tuple(pre);
  tuple.push_back(0);
  tuple.insert(tuple.end(), post.begin(), post.end());
  for (Eigen::Index j = 0; j < mid.size(); ++j) {
    if (mid(j) == 0) continue;
    tuple[pre.size()] = static_cast<int>(j);
    acc += rep_eval(b, r, tuple) * mid(j);
  }
  return acc;
}

// Visits every split of positions {0..n-1} into an increasing m-subset and
// its increasing complement, in lexicographic subset order.
template <typename F>
inline void for_each_split(int n, int m, F&& fn) {
  if (m < 0 || m > n) return;
  std::vector<int> first(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) first[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<int> rest;
    rest.reserve(static_cast<std::size_t>(n - m));
    {
      std::size_t p = 0;
      for (int i = 0; i < n; ++i) {
        if (p < first.size() && first[p] == i)
          ++p;
        else
          rest.push_back(i);
      }
    }
    fn(first, rest);
    // advance combination
    int i = m - 1;
    while (i >= 0 && first[static_cast<std::size_t>(i)] == n - m + i) --i;
    if (i < 0) break;
    ++first[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < m; ++j)
      first[static_cast<std::size_t>(j)] =
          first[static_cast<std::size_t>(j - 1)] + 1;
  }
}

namespace detail {

inline std::vector<int> pick(const std::vector<int>& tuple,
                             const std::vector<int>& positions) {
  std::vector<int> out;
  out.reserve(positions.size());
  for (int p : positions) out.push_back(tuple[static_cast<std::size_t>(p)]);
  return out;
}

// Ring sign relating the reordered word (tuple at `first` then at `rest`)
// to the original tuple.
inline int split_sign(const GradedBasis& b, const std::vector<int>& tuple,
                      const std::vector<int>& first,
                      const std::vector<int>& rest) {
  std::vector<int> w = pick(tuple, first);
  std::vector<int> r = pick(tuple, rest);
  w.insert(w.end(), r.begin(), r.end());
  return reorder_sign(b, w, tuple);
}

}  // namespace detail

struct Violation {
  std::string context;
  std::string detail;
};

struct CheckReport {
  std::string name;
  bool pass = true;
  long long equations = 0;
  std::vector<Violation> violations;
  bool truncated = false;

  void fail(std::string context, std::string detail) {
    pass = false;
    if (violations.size() >= 64) {
      truncated = true;
      return;
    }
    violations.push_back({std::move(context), std::move(detail)});
  }
};

struct CheckOptions {
  bool full_mode = false;  // symmetric-group sums instead of unshuffles
  int max_total_arity = 2 * kDefaultMaxArity - 1;
};

// One (outer k, inner m) term of the graded-symmetric structure residual on
// the tuple M, in either summation mode. The full mode carries the weight
// 1/(m!(k-1)!) that collapses internal permutations onto the unshuffle form.
inline Vec cl_structure_term(const GradedBasis& b, const BracketFamily& f,
                             const std::vector<int>& M, int k, int m,
                             bool full_mode) {
  const int n = static_cast<int>(M.size());
  Vec acc = zero_vec(b.dim());
  if (k < 1 || m < 1 || k + m != n + 1) return acc;
  if (!full_mode) {
    for_each_split(n, m, [&](const std::vector<int>& first,
                             const std::vector<int>& rest) {
      const int sign = detail::split_sign(b, M, first, rest);
      Vec inner = bracket_eval(b, f, detail::pick(M, first));
      if (is_zero(inner)) return;
      acc += bracket_eval_insert(b, f, {}, inner, detail::pick(M, rest)) *
             Rat(sign);
    });
    return acc;
  }
  const Rat weight = Rat(1) / (factorial(m) * factorial(k - 1));
  for (const Perm& p : all_permutations(n)) {
    std::vector<int> w = apply_perm(p, M);
    const int sign = reorder_sign(b, w, M);
    std::vector<int> first(w.begin(), w.begin() + m);
    std::vector<int> rest(w.begin() + m, w.end());
    Vec inner = bracket_eval(b, f, first);
    if (is_zero(inner)) continue;
    acc += bracket_eval_insert(b, f, {}, inner, rest) * Rat(Rat(sign) * weight);
  }
  return acc;
}

inline Vec cl_structure_residual(const GradedBasis& b, const BracketFamily& f,
                                 const std::vector<int>& M,
                                 bool full_mode = false) {
  const int n = static_cast<int>(M.size());
  Vec acc = zero_vec(b.dim());
  for (int m = 1; m <= n; ++m)
    acc += cl_structure_term(b, f, M, n + 1 - m, m, full_mode);
  return acc;
}

inline CheckReport check_cl_infinity(const GradedBasis& b,
                                     const BracketFamily& f,
                                     const CheckOptions& opt = {}) {
  CheckReport rep;
  rep.name = "cl-structure";
  if (!f.skew)
    throw std::invalid_argument(
        "check_cl_infinity: family must be graded-symmetric (skew)");
  const int top = std::min(2 * f.max_arity - 1, opt.max_total_arity);
  for (int n = 1; n <= top; ++n) {
    for (const auto& M : enumerate_sorted_tuples(b, n)) {
      Vec res = cl_structure_residual(b, f, M, opt.full_mode);
      ++rep.equations;
      if (!is_zero(res))
        rep.fail("arity " + std::to_string(n) + " tuple " + tuple_names(b, M),
                 "residual " + vec_witness(b, res));
    }
  }
  return rep;
}

// Ordered structure residual: inner products inserted in place with the
// prefix ghost-parity sign, identity ordering only.
inline Vec ga_structure_residual(const GradedBasis& b, const BracketFamily& f,
                                 const std::vector<int>& T) {
  const int n = static_cast<int>(T.size());
  Vec acc = zero_vec(b.dim());
  for (int j = 1; j <= n; ++j) {
    const int i = n + 1 - j;
    if (i < 1) continue;
    int prefix_sign = 1;
    for (int l = 1; l <= i; ++l) {
      std::vector<int> inner_args(T.begin() + (l - 1),
                                  T.begin() + (l - 1) + j);
      Vec inner = bracket_eval(b, f, inner_args);
      if (!is_zero(inner)) {
        std::vector<int> pre(T.begin(), T.begin() + (l - 1));
        std::vector<int> post(T.begin() + (l - 1) + j, T.end());
        acc += bracket_eval_insert(b, f, pre, inner, post) * Rat(prefix_sign);
      }
      if (b.gpar(T[static_cast<std::size_t>(l - 1)]) & 1) prefix_sign = -prefix_sign;
    }
  }
  return acc;
}

inline CheckReport check_ga_infinity(const GradedBasis& b,
                                     const BracketFamily& f,
                                     const CheckOptions& opt = {}) {
  CheckReport rep;
  rep.name = "ga-structure";
  if (f.skew)
    throw std::invalid_argument(
        "check_ga_infinity: family must be ordered (non-skew)");
  const int top = std::min(2 * f.max_arity - 1, opt.max_total_arity);
  for (int n = 1; n <= top; ++n) {
    for (const auto& T : enumerate_ordered_tuples(b, n)) {
      Vec res = ga_structure_residual(b, f, T);
      ++rep.equations;
      if (!is_zero(res))
        rep.fail("arity " + std::to_string(n) + " tuple " + tuple_names(b, T),
                 "residual " + vec_witness(b, res));
    }
  }
  return rep;
}

// Exchange-law reporting on the raw entries, as a CheckReport. Runs the
// family validation on a scratch copy so already-validated families can be
// re-audited and deliberately broken ones diagnosed.
inline CheckReport check_skew(const GradedBasis& b, const BracketFamily& f,
                              int max_arity = kDefaultMaxArity) {
  CheckReport rep;
  rep.name = "exchange-law";
  BracketFamily scratch = f;
  for (const std::string& e : validate_family(b, scratch, max_arity))
    rep.fail("family entry", e);
  rep.equations = static_cast<long long>(f.raw.size());
  return rep;
}

inline CheckReport check_skew(const GradedBasis& b,
                              const RepresentationFamily& r,
                              int max_arity = kDefaultMaxArity) {
  CheckReport rep;
  rep.name = "exchange-law";
  RepresentationFamily scratch = r;
  for (const std::string& e : validate_representation(b, scratch, max_arity))
    rep.fail("representation entry", e);
  rep.equations = static_cast<long long>(r.raw.size());
  return rep;
}

// Graded-symmetric representation equation on the tuple M: composition side
// minus bracket-insertion side, as a module_dim x module_dim matrix.
//
//   sum_{a+b=n} a! b! sum_{splits(a,b)} K rho_a(first) rho_b(rest)
// = sum_{m+k=n+1} k! sum_{splits(m,k-1)} K rho_k(l_m(first), rest)
//
// The full mode evaluates the same two sides with symmetric-group sums: the
// composition side unweighted, the insertion side with weight 1/m! per inner
// arity m, slot sum with prefix ghost-parity signs and in-place insertion.
inline Mat rep_structure_residual(const GradedBasis& b,
                                  const BracketFamily& f,
                                  const RepresentationFamily& r,
                                  const std::vector<int>& M,
                                  bool full_mode = false) {
  const int n = static_cast<int>(M.size());
  Mat lhs = zero_mat(r.module_dim, r.module_dim);
  Mat rhs = zero_mat(r.module_dim, r.module_dim);
  if (!full_mode) {
    for (int a = 1; a <= n - 1; ++a) {
      const int bq = n - a;
      for_each_split(n, a, [&](const std::vector<int>& first,
                               const std::vector<int>& rest) {
        const int sign = detail::split_sign(b, M, first, rest);
        Mat outer = rep_eval(b, r, detail::pick(M, first));
        if (is_zero(outer)) return;
        Mat inner = rep_eval(b, r, detail::pick(M, rest));
        if (is_zero(inner)) return;
        lhs += outer * inner * Rat(factorial(a) * factorial(bq) * Rat(sign));
      });
    }
    for (int m = 1; m <= n; ++m) {
      const int k = n + 1 - m;
      if (k < 1) continue;
      for_each_split(n, m, [&](const std::vector<int>& first,
                               const std::vector<int>& rest) {
        const int sign = detail::split_sign(b, M, first, rest);
        Vec inner = bracket_eval(b, f, detail::pick(M, first));
        if (is_zero(inner)) return;
        rhs += rep_eval_insert(b, r, {}, inner, detail::pick(M, rest)) *
               Rat(factorial(k) * Rat(sign));
      });
    }
    return (lhs - rhs).eval();
  }
  for (const Perm& p : all_permutations(n)) {
    std::vector<int> w = apply_perm(p, M);
    const int sign = reorder_sign(b, w, M);
    for (int a = 1; a <= n - 1; ++a) {
      std::vector<int> first(w.begin(), w.begin() + a);
      std::vector<int> rest(w.begin() + a, w.end());
      Mat outer = rep_eval(b, r, first);
      if (is_zero(outer)) continue;
      Mat inner = rep_eval(b, r, rest);
      if (is_zero(inner)) continue;
      lhs += outer * inner * Rat(sign);
    }
    for (int m = 1; m <= n; ++m) {
      const int k = n + 1 - m;
      if (k < 1) continue;
      const Rat weight = Rat(1) / factorial(m);
      int prefix_sign = 1;
      for (int slot = 1; slot <= k; ++slot) {
        std::vector<int> inner_args(w.begin() + (slot - 1),
                                    w.begin() + (slot - 1) + m);
        Vec inner = bracket_eval(b, f, inner_args);
        if (!is_zero(inner)) {
          std::vector<int> pre(w.begin(), w.begin() + (slot - 1));
          std::vector<int> post(w.begin() + (slot - 1) + m, w.end());
          rhs += rep_eval_insert(b, r, pre, inner, post) *
                 Rat(Rat(sign * prefix_sign) * weight);
        }
        if (b.gpar(w[static_cast<std::size_t>(slot - 1)]) & 1)
          prefix_sign = -prefix_sign;
      }
    }
  }
  return (lhs - rhs).eval();
}

// Ordered representation equation (identity ordering), for ordered families:
//   sum_{a+b=n} rho_a(T_1..T_a) rho_b(T_{a+1}..T_n)
// = sum_{m+k=n+1} sum_{l=1..k} prefix-sign rho_k(.., m_m(T_l..), ..)
inline Mat rep_structure_residual_ordered(const GradedBasis& b,
                                          const BracketFamily& f,
                                          const RepresentationFamily& r,
                                          const std::vector<int>& T) {
  const int n = static_cast<int>(T.size());
  Mat lhs = zero_mat(r.module_dim, r.module_dim);
  Mat rhs = zero_mat(r.module_dim, r.module_dim);
  for (int a = 1; a <= n - 1; ++a) {
    std::vector<int> first(T.begin(), T.begin() + a);
    std::vector<int> rest(T.begin() + a, T.end());
    lhs += rep_eval(b, r, first) * rep_eval(b, r, rest);
  }
  for (int m = 1; m <= n; ++m) {
    const int k = n + 1 - m;
    if (k < 1) continue;
    int prefix_sign = 1;
    for (int slot = 1; slot <= k; ++slot) {
      std::vector<int> inner_args(T.begin() + (slot - 1),
                                  T.begin() + (slot - 1) + m);
      Vec inner = bracket_eval(b, f, inner_args);
      if (!is_zero(inner)) {
        std::vector<int> pre(T.begin(), T.begin() + (slot - 1));
        std::vector<int> post(T.begin() + (slot - 1) + m, T.end());
        rhs += rep_eval_insert(b, r, pre, inner, post) * Rat(prefix_sign);
      }
      if (b.gpar(T[static_cast<std::size_t>(slot - 1)]) & 1)
        prefix_sign = -prefix_sign;
    }
  }
  return (lhs - rhs).eval();
}

inline CheckReport check_representation(const GradedBasis& b,
                                        const BracketFamily& f,
                                        const RepresentationFamily& r,
                                        const CheckOptions& opt = {}) {
  CheckReport rep;
  rep.name = "representation";
  if (f.skew != r.skew)
    throw std::invalid_argument(
        "check_representation: bracket family and representation must use "
        "the same exchange convention");
  const int reach = std::max(2 * r.max_arity, f.max_arity + r.max_arity - 1);
  const int top = std::min(reach, opt.max_total_arity);
  for (int n = 1; n <= top; ++n) {
    const auto tuples =
        f.skew ? enumerate_sorted_tuples(b, n) : enumerate_ordered_tuples(b, n);
    for (const auto& M : tuples) {
      Mat res = f.skew
                    ? rep_structure_residual(b, f, r, M, opt.full_mode)
                    : rep_structure_residual_ordered(b, f, r, M);
      ++rep.equations;
      if (!is_zero(res))
        rep.fail("arity " + std::to_string(n) + " tuple " + tuple_names(b, M),
                 "residual " + mat_witness(res));
    }
  }
  return rep;
}

// Arity-2 graded-symmetric family from classical structure constants
// c[i][j] = coordinates of the bracket of generators i and j. The input is
// checked for the exchange law by validate_family.
inline BracketFamily brackets_from_lie(
    const GradedBasis& b,
    const std::map<std::pair<int, int>, std::map<int, Rat>>& c) {
  BracketFamily f;
  f.skew = true;
  for (auto& [ij, out] : c) {
    FamilyEntry e;
    e.inputs = {ij.first, ij.second};
    e.outputs = out;
    f.raw.push_back(std::move(e));
  }
  return f;
}

}  // namespace ghostcalc
