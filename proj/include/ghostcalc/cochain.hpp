#pragma once

// Module-valued cochains on a graded basis and the differentials a bracket
// family and coefficient action induce on them, in two independent routes:
//
//   tensor route: direct combinatorial formulas on tuples (unshuffle sums,
//     or literal symmetric-group sums in full mode)
//   ghost route: transport the cochain into the ghost ring, apply the odd
//     derivation there, and read coefficients back
//
// correspondence_check compares the two; the graded complex at the bottom
// grades the ghost ring by total ghost degree and extracts cohomology ranks.

#include "ghostcalc/derivation.hpp"
#include "ghostcalc/ghost_ring.hpp"
#include "ghostcalc/graded.hpp"
#include "ghostcalc/linalg.hpp"
#include "ghostcalc/linf.hpp"
#include "ghostcalc/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ghostcalc {

// skew: keys are sorted tuples, evaluation applies the exchange sign.
// ordered: keys are literal tuples. Values always live in Q^module_dim.
struct Cochain {
  int arity = 0;
  bool skew = true;
  int module_dim = 1;
  std::map<std::vector<int>, Vec> values;
};

inline Cochain make_cochain(int arity, bool skew, int module_dim) {
  if (arity < 0 || module_dim < 1)
    throw std::invalid_argument("make_cochain: bad arity or module dimension");
  Cochain c;
  c.arity = arity;
  c.skew = skew;
  c.module_dim = module_dim;
  return c;
}

inline void cochain_set(const GradedBasis& b, Cochain& c,
                        const std::vector<int>& tuple, const Vec& v) {
  if (static_cast<int>(tuple.size()) != c.arity)
    throw std::invalid_argument("cochain_set: tuple arity mismatch");
  if (v.size() != c.module_dim)
    throw std::invalid_argument("cochain_set: value dimension mismatch");
  for (int i : tuple)
    if (i < 0 || i >= b.dim())
      throw std::invalid_argument("cochain_set: generator index out of range");
  if (!c.skew) {
    if (is_zero(v))
      c.values.erase(tuple);
    else
      c.values[tuple] = v;
    return;
  }
  SortedWord s = sort_with_sign(b, tuple);
  if (s.zero) {
    if (!is_zero(v))
      throw std::invalid_argument(
          "cochain_set: tuple repeats a square-zero generator, value must "
          "vanish");
    return;
  }
  Vec canon = (v * Rat(s.sign)).eval();
  if (is_zero(canon))
    c.values.erase(s.word);
  else
    c.values[s.word] = canon;
}

inline Vec cochain_eval(const GradedBasis& b, const Cochain& c,
                        const std::vector<int>& tuple) {
  if (static_cast<int>(tuple.size()) != c.arity)
    throw std::invalid_argument("cochain_eval: tuple arity mismatch");
  if (!c.skew) {
    auto it = c.values.find(tuple);
    return it == c.values.end() ? zero_vec(c.module_dim) : it->second;
  }
  SortedWord s = sort_with_sign(b, tuple);
  if (s.zero) return zero_vec(c.module_dim);
  auto it = c.values.find(s.word);
  if (it == c.values.end()) return zero_vec(c.module_dim);
  return (it->second * Rat(s.sign)).eval();
}

inline bool cochain_is_zero(const Cochain& c) {
  for (auto& [t, v] : c.values)
    if (!is_zero(v)) return false;
  return true;
}

inline Cochain cochain_add(const Cochain& a, const Cochain& c) {
  if (a.arity != c.arity || a.skew != c.skew || a.module_dim != c.module_dim)
    throw std::invalid_argument("cochain_add: shape mismatch");
  Cochain out = a;
  for (auto& [t, v] : c.values) {
    auto it = out.values.find(t);
    if (it == out.values.end()) {
      out.values[t] = v;
    } else {
      it->second += v;
      if (is_zero(it->second)) out.values.erase(it);
    }
  }
  return out;
}

inline Cochain cochain_scale(const Cochain& a, const Rat& s) {
  Cochain out = a;
  if (s == 0) {
    out.values.clear();
    return out;
  }
  for (auto& [t, v] : out.values) v = (v * s).eval();
  return out;
}

inline Cochain cochain_sub(const Cochain& a, const Cochain& c) {
  return cochain_add(a, cochain_scale(c, Rat(-1)));
}

inline std::string cochain_to_string(const GradedBasis& b, const Cochain& c) {
  std::string out;
  for (auto& [t, v] : c.values) {
    if (is_zero(v)) continue;
    if (!out.empty()) out += " + ";
    out += "[";
    for (Eigen::Index i = 0; i < v.size(); ++i)
      out += (i ? ", " : "") + rat_to_string(v(i));
    out += "](" + tuple_names(b, t) + ")";
  }
  return out.empty() ? "0" : out;
}

// ---- ghost transport ----

// eta coefficient of the sorted tuple M: (n! / prod mult_M!) w(M)
inline GhostVecPoly to_ghost(const GradedBasis& b, const Cochain& c) {
  if (!c.skew)
    throw std::invalid_argument("to_ghost: ordered cochains have no ghost form");
  GhostVecPoly out = vpoly_zero(c.module_dim);
  const Rat nf = factorial(c.arity);
  for (auto& [M, v] : c.values) {
    if (is_zero(v)) continue;
    SignedMonomial sm = mono_from_word(b, M);
    const Rat w = nf / multiplicity_factorial(M);
    out.add_term(sm.mono, (v * Rat(w * Rat(sm.sign))).eval());
  }
  return out;
}

inline Cochain from_ghost(const GradedBasis& b, const GhostVecPoly& p,
                          int arity) {
  Cochain c = make_cochain(arity, true, p.dim);
  const Rat nf = factorial(arity);
  for (auto& [m, v] : p.terms) {
    const std::vector<int> word = m.word();
    if (static_cast<int>(word.size()) != arity)
      throw std::invalid_argument(
          "from_ghost: element mixes word lengths, expected arity " +
          std::to_string(arity));
    c.values[word] = (v * Rat(multiplicity_factorial(word) / nf)).eval();
  }
  return c;
}

// ---- induced differentials, tensor route ----

namespace detail {

// w evaluated with a linear combination inserted between pre and post
inline Vec cochain_eval_insert(const GradedBasis& b, const Cochain& c,
                               const std::vector<int>& pre, const Vec& mid,
                               const std::vector<int>& post) {
  Vec acc = zero_vec(c.module_dim);
  std::vector<int> tuple(pre);
  tuple.push_back(0);
  tuple.insert(tuple.end(), post.begin(), post.end());
  for (Eigen::Index j = 0; j < mid.size(); ++j) {
    if (mid(j) == 0) continue;
    tuple[pre.size()] = static_cast<int>(j);
    acc += cochain_eval(b, c, tuple) * mid(j);
  }
  return acc;
}

inline void require_module_match(const RepresentationFamily& r,
                                 const Cochain& c, const char* where) {
  if (!r.table.empty() && r.module_dim != c.module_dim)
    throw std::invalid_argument(std::string(where) +
                                ": representation module dimension differs "
                                "from the cochain's");
}

}  // namespace detail

// Arity-k component of the induced differential on a graded-symmetric
// cochain w of arity n, landing in arity N = n + k - 1:
//
//   (S_k w)(M) = (n!/N!) [ (k-1)! sum_{splits(k-1,n)} K rho_{k-1}(first) w(rest)
//                        -        sum_{splits(k,n-1)} K w(l_k(first), rest) ]
//
// The full mode computes the same component as a literal symmetric-group sum
// (weight 1/N! on the action term, 1/(k! N!) on the slot-insertion term);
// the two agree identically, whether or not the family satisfies the
// structure equations.
inline Cochain cl_differential_component(const GradedBasis& b,
                                         const BracketFamily& f,
                                         const RepresentationFamily& r,
                                         const Cochain& c, int k,
                                         bool full_mode = false) {
  if (!c.skew)
    throw std::invalid_argument(
        "cl_differential_component: cochain must be graded-symmetric");
  if (!f.skew)
    throw std::invalid_argument(
        "cl_differential_component: bracket family must be graded-symmetric");
  if (!r.table.empty() && !r.skew)
    throw std::invalid_argument(
        "cl_differential_component: representation must be graded-symmetric");
  if (k < 1) throw std::invalid_argument("cl_differential_component: k < 1");
  detail::require_module_match(r, c, "cl_differential_component");
  const int n = c.arity;
  const int N = n + k - 1;
  Cochain out = make_cochain(N, true, c.module_dim);
  const bool action = k >= 2 && !r.table.empty();
  const bool insertion = n >= 1 && !f.table.empty();
  if (!action && !insertion) return out;
  const Rat scale = factorial(n) / factorial(N);
  for (const auto& M : enumerate_sorted_tuples(b, N)) {
    Vec acc = zero_vec(c.module_dim);
    if (!full_mode) {
      if (action) {
        Vec t1 = zero_vec(c.module_dim);
        for_each_split(N, k - 1, [&](const std::vector<int>& first,
                                     const std::vector<int>& rest) {
          const int sign = detail::split_sign(b, M, first, rest);
          Mat rho = rep_eval(b, r, detail::pick(M, first));
          if (is_zero(rho)) return;
          t1 += rho * cochain_eval(b, c, detail::pick(M, rest)) * Rat(sign);
        });
        acc += t1 * factorial(k - 1);
      }
      if (insertion) {
        for_each_split(N, k, [&](const std::vector<int>& first,
                                 const std::vector<int>& rest) {
          const int sign = detail::split_sign(b, M, first, rest);
          Vec inner = bracket_eval(b, f, detail::pick(M, first));
          if (is_zero(inner)) return;
          acc -= detail::cochain_eval_insert(b, c, {}, inner,
                                             detail::pick(M, rest)) *
                 Rat(sign);
        });
      }
      acc = (acc * scale).eval();
    } else {
      Vec t1 = zero_vec(c.module_dim);
      Vec t2 = zero_vec(c.module_dim);
      for (const Perm& p : all_permutations(N)) {
        std::vector<int> w = apply_perm(p, M);
        const int sign = reorder_sign(b, w, M);
        if (action) {
          std::vector<int> first(w.begin(), w.begin() + (k - 1));
          std::vector<int> rest(w.begin() + (k - 1), w.end());
          Mat rho = rep_eval(b, r, first);
          if (!is_zero(rho))
            t1 += rho * cochain_eval(b, c, rest) * Rat(sign);
        }
        if (insertion) {
          int prefix_sign = 1;
          for (int l = 1; l <= N - k + 1; ++l) {
            std::vector<int> inner_args(w.begin() + (l - 1),
                                        w.begin() + (l - 1) + k);
            Vec inner = bracket_eval(b, f, inner_args);
            if (!is_zero(inner)) {
              std::vector<int> pre(w.begin(), w.begin() + (l - 1));
              std::vector<int> post(w.begin() + (l - 1) + k, w.end());
              t2 += detail::cochain_eval_insert(b, c, pre, inner, post) *
                    Rat(sign * prefix_sign);
            }
            if (b.gpar(w[static_cast<std::size_t>(l - 1)]) & 1)
              prefix_sign = -prefix_sign;
          }
        }
      }
      const Rat nfact = factorial(N);
      const Rat w1 = Rat(1) / nfact;
      const Rat w2 = Rat(1) / Rat(factorial(k) * nfact);
      acc = (t1 * w1).eval();
      acc -= t2 * w2;
    }
    if (!is_zero(acc)) out.values[M] = acc;
  }
  return out;
}

// Classical alternating-sign differential on a basis of odd ghost parity
// (every internal degree even):
//
//   (d w)(x_0..x_n) = sum_i (-1)^i rho(x_i) w(.. x_i^ ..)
//                   + sum_{i<j} (-1)^{i+j} w([x_i,x_j], .. x_i^ .. x_j^ ..)
//
// Only the arity-2 brackets and arity-1 action enter. On such families this
// equals (n+1) times the k=2 component above.
inline Cochain ce_differential(const GradedBasis& b, const BracketFamily& f,
                               const RepresentationFamily& r,
                               const Cochain& c) {
  if (!c.skew)
    throw std::invalid_argument(
        "ce_differential: cochain must be graded-symmetric");
  if (!f.skew)
    throw std::invalid_argument(
        "ce_differential: bracket family must be graded-symmetric");
  for (int i = 0; i < b.dim(); ++i)
    if (!(b.gpar(i) & 1))
      throw std::invalid_argument(
          "ce_differential: alternating signs require every generator of odd "
          "ghost parity (even internal degree)");
  detail::require_module_match(r, c, "ce_differential");
  const int n = c.arity;
  const int N = n + 1;
  Cochain out = make_cochain(N, true, c.module_dim);
  const bool action = !r.table.empty();
  for (const auto& M : enumerate_sorted_tuples(b, N)) {
    Vec acc = zero_vec(c.module_dim);
    if (action) {
      for (int i = 0; i < N; ++i) {
        std::vector<int> rest;
        rest.reserve(static_cast<std::size_t>(n));
        for (int s = 0; s < N; ++s)
          if (s != i) rest.push_back(M[static_cast<std::size_t>(s)]);
        Mat rho = rep_eval(b, r, {M[static_cast<std::size_t>(i)]});
        if (is_zero(rho)) continue;
        Vec term = rho * cochain_eval(b, c, rest);
        acc += (i & 1) ? Vec(-term) : term;
      }
    }
    if (n >= 1) {
      for (int i = 0; i < N; ++i) {
        for (int j = i + 1; j < N; ++j) {
          Vec inner = bracket_eval(
              b, f,
              {M[static_cast<std::size_t>(i)], M[static_cast<std::size_t>(j)]});
          if (is_zero(inner)) continue;
          std::vector<int> rest;
          rest.reserve(static_cast<std::size_t>(n - 1));
          for (int s = 0; s < N; ++s)
            if (s != i && s != j) rest.push_back(M[static_cast<std::size_t>(s)]);
          Vec term = detail::cochain_eval_insert(b, c, {}, inner, rest);
          acc += ((i + j) & 1) ? Vec(-term) : term;
        }
      }
    }
    if (!is_zero(acc)) out.values[M] = acc;
  }
  return out;
}

// Arity-k component of the induced differential on an ordered cochain:
//
//   (S_k w)(T) = rho_{k-1}(T_1..T_{k-1}) w(T_k..T_N)
//              - sum_l prefix-parity-sign w(.., m_k(T_l..T_{l+k-1}), ..)
inline Cochain ga_differential_component(const GradedBasis& b,
                                         const BracketFamily& f,
                                         const RepresentationFamily& r,
                                         const Cochain& c, int k) {
  if (c.skew)
    throw std::invalid_argument(
        "ga_differential_component: cochain must be ordered");
  if (f.skew)
    throw std::invalid_argument(
        "ga_differential_component: bracket family must be ordered");
  if (!r.table.empty() && r.skew)
    throw std::invalid_argument(
        "ga_differential_component: representation must be ordered");
  if (k < 1) throw std::invalid_argument("ga_differential_component: k < 1");
  detail::require_module_match(r, c, "ga_differential_component");
  const int n = c.arity;
  const int N = n + k - 1;
  Cochain out = make_cochain(N, false, c.module_dim);
  const bool action = k >= 2 && !r.table.empty();
  const bool insertion = n >= 1 && !f.table.empty();
  if (!action && !insertion) return out;
  for (const auto& T : enumerate_ordered_tuples(b, N)) {
    Vec acc = zero_vec(c.module_dim);
    if (action) {
      std::vector<int> first(T.begin(), T.begin() + (k - 1));
      std::vector<int> rest(T.begin() + (k - 1), T.end());
      Mat rho = rep_eval(b, r, first);
      if (!is_zero(rho)) acc += rho * cochain_eval(b, c, rest);
    }
    if (insertion) {
      int prefix_sign = 1;
      for (int l = 1; l <= n; ++l) {
        std::vector<int> inner_args(T.begin() + (l - 1),
                                    T.begin() + (l - 1) + k);
        Vec inner = bracket_eval(b, f, inner_args);
        if (!is_zero(inner)) {
          std::vector<int> pre(T.begin(), T.begin() + (l - 1));
          std::vector<int> post(T.begin() + (l - 1) + k, T.end());
          acc -= detail::cochain_eval_insert(b, c, pre, inner, post) *
                 Rat(prefix_sign);
        }
        if (b.gpar(T[static_cast<std::size_t>(l - 1)]) & 1)
          prefix_sign = -prefix_sign;
      }
    }
    if (!is_zero(acc)) out.values[T] = acc;
  }
  return out;
}

// First witness of a non-associative triple, or empty when the binary
// product is associative on the basis.
inline std::string associativity_witness(const GradedBasis& b,
                                         const BracketFamily& f) {
  for (int x = 0; x < b.dim(); ++x)
    for (int y = 0; y < b.dim(); ++y) {
      Vec xy = bracket_eval(b, f, {x, y});
      for (int z = 0; z < b.dim(); ++z) {
        Vec left = bracket_eval_insert(b, f, {}, xy, {z});
        Vec right =
            bracket_eval_insert(b, f, {x}, bracket_eval(b, f, {y, z}), {});
        if (!is_zero((left - right).eval()))
          return "(" + b.name(x) + "," + b.name(y) + "," + b.name(z) + ")";
      }
    }
  return "";
}

// One-sided bar differential for an associative product with an optional
// left action, classical alternating signs (internal degree 0 throughout):
//
//   (d w)(a_1..a_{n+1}) = rho(a_1) w(a_2..a_{n+1})
//                       + sum_{i=1..n} (-1)^i w(a_1, .., a_i a_{i+1}, ..)
inline Cochain hochschild_differential(const GradedBasis& b,
                                       const BracketFamily& f,
                                       const RepresentationFamily& r,
                                       const Cochain& c) {
  if (c.skew)
    throw std::invalid_argument(
        "hochschild_differential: cochain must be ordered");
  if (f.skew)
    throw std::invalid_argument(
        "hochschild_differential: product must be ordered");
  for (int i = 0; i < b.dim(); ++i)
    if (!(b.gpar(i) & 1))
      throw std::invalid_argument(
          "hochschild_differential: alternating signs require every "
          "generator of internal degree 0 parity");
  detail::require_module_match(r, c, "hochschild_differential");
  const std::string bad = associativity_witness(b, f);
  if (!bad.empty())
    throw std::domain_error(
        "hochschild_differential: product is not associative at " + bad +
        ", the bar differential does not square to zero");
  const int n = c.arity;
  const int N = n + 1;
  Cochain out = make_cochain(N, false, c.module_dim);
  const bool action = !r.table.empty();
  for (const auto& T : enumerate_ordered_tuples(b, N)) {
    Vec acc = zero_vec(c.module_dim);
    if (action) {
      Mat rho = rep_eval(b, r, {T[0]});
      if (!is_zero(rho)) {
        std::vector<int> rest(T.begin() + 1, T.end());
        acc += rho * cochain_eval(b, c, rest);
      }
    }
    for (int i = 1; i <= n; ++i) {
      Vec inner = bracket_eval(b, f,
                               {T[static_cast<std::size_t>(i - 1)],
                                T[static_cast<std::size_t>(i)]});
      if (is_zero(inner)) continue;
      std::vector<int> pre(T.begin(), T.begin() + (i - 1));
      std::vector<int> post(T.begin() + (i + 1), T.end());
      Vec term = detail::cochain_eval_insert(b, c, pre, inner, post);
      acc += (i & 1) ? Vec(-term) : term;
    }
    if (!is_zero(acc)) out.values[T] = acc;
  }
  return out;
}

// ---- the two routes compared ----

// Transport the cochain to the ghost ring, apply the odd derivation, and
// compare each word-length slice against the matching tensor-route
// component. The routes share no evaluation code beyond the family tables.
inline CheckReport correspondence_check(const GradedBasis& b,
                                        const BracketFamily& f,
                                        const RepresentationFamily& r,
                                        const Cochain& c,
                                        bool full_mode = false,
                                        int at_least_k = 0) {
  CheckReport rep;
  rep.name = "ghost-tensor correspondence";
  const bool has_rep = !r.table.empty();
  if (has_rep && r.module_dim != c.module_dim)
    throw std::invalid_argument(
        "correspondence_check: representation module dimension differs from "
        "the cochain's");
  if (!has_rep && c.module_dim != 1)
    throw std::invalid_argument(
        "correspondence_check: module-valued cochain needs a representation");
  OddDerivation d = has_rep ? make_derivation(b, f, r) : make_derivation(b, f);
  GhostVecPoly image = apply(d, to_ghost(b, c));
  std::map<int, GhostVecPoly> by_length;
  for (auto& [m, v] : image.terms) {
    auto [it, fresh] =
        by_length.try_emplace(m.length(), vpoly_zero(c.module_dim));
    it->second.add_term(m, v);
  }
  const int kmax =
      std::max({f.max_arity, has_rep ? r.max_arity + 1 : 1, 1, at_least_k});
  for (int k = 1; k <= kmax; ++k) {
    const int N = c.arity + k - 1;
    Cochain sk = cl_differential_component(b, f, r, c, k, full_mode);
    GhostVecPoly want = to_ghost(b, sk);
    GhostVecPoly have = vpoly_zero(c.module_dim);
    if (auto it = by_length.find(N); it != by_length.end()) {
      have = it->second;
      by_length.erase(it);
    }
    ++rep.equations;
    GhostVecPoly diff = vpoly_sub(have, want);
    if (!diff.is_zero())
      rep.fail("component k=" + std::to_string(k),
               "ghost route minus tensor route = " + vpoly_to_string(b, diff));
  }
  for (auto& [len, v] : by_length)
    if (!v.is_zero())
      rep.fail("word length " + std::to_string(len),
               "ghost image outside every component: " + vpoly_to_string(b, v));
  return rep;
}

// ---- graded complex and cohomology ----

// All normal-form monomials of total ghost degree N, in index order.
inline std::vector<GhostMonomial> monomials_of_degree(const GradedBasis& b,
                                                      int N) {
  std::vector<GhostMonomial> out;
  std::vector<int> word;
  auto rec = [&](auto&& self, int gen, int left) -> void {
    if (left == 0) {
      SignedMonomial sm = mono_from_word(b, word);
      out.push_back(sm.mono);
      return;
    }
    if (gen >= b.dim()) return;
    self(self, gen + 1, left);
    const int gd = b.gdeg(gen);
    const int cap = (b.gpar(gen) & 1) ? 1 : left / gd;
    std::size_t pushed = 0;
    for (int e = 1; e <= cap && e * gd <= left; ++e) {
      word.push_back(gen);
      ++pushed;
      self(self, gen + 1, left - e * gd);
    }
    while (pushed--) word.pop_back();
  };
  rec(rec, 0, N);
  return out;
}

struct GradedComplex {
  std::vector<std::vector<GhostMonomial>> monomials;  // per degree 0..top
  std::vector<int> dims;                              // coeff_dim * count
  std::vector<Mat> maps;  // maps[N]: degree N -> N+1, N = 0..top-1
};

// The differential's matrices on the ghost-degree graded pieces of
// (coefficients) (x) R. Requires the coefficient action, if any, to be
// degree-compatible: unary entries on internal-degree-0 generators.
inline GradedComplex build_graded_complex(const OddDerivation& d,
                                          int max_degree) {
  if (max_degree < 0)
    throw std::invalid_argument("build_graded_complex: negative degree");
  for (auto& [tuple, mat] : d.rep.table) {
    int gd = 0;
    for (int i : tuple) gd += d.basis.gdeg(i);
    if (gd != 1)
      throw std::domain_error(
          "build_graded_complex: coefficient action entry on " +
          tuple_names(d.basis, tuple) +
          " does not raise ghost degree by one; the complex is not graded");
  }
  // entries with algebra coefficients skip the validation-time degree check
  for (int j = 0; j < d.basis.dim(); ++j)
    for (auto& [I, cv] : d.gen_image[static_cast<std::size_t>(j)])
      if (I.ghost_degree(d.basis) != d.basis.gdeg(j) + 1)
        throw std::domain_error(
            "build_graded_complex: the image of eta[" + d.basis.name(j) +
            "] is not degree-homogeneous; the complex is not graded");
  GradedComplex gc;
  const int top = max_degree + 1;
  std::vector<std::map<GhostMonomial, int>> index(
      static_cast<std::size_t>(top) + 1);
  for (int N = 0; N <= top; ++N) {
    gc.monomials.push_back(monomials_of_degree(d.basis, N));
    auto& mono_index = index[static_cast<std::size_t>(N)];
    int i = 0;
    for (const GhostMonomial& m : gc.monomials.back()) mono_index[m] = i++;
    gc.dims.push_back(d.coeff_dim *
                      static_cast<int>(gc.monomials.back().size()));
  }
  for (int N = 0; N < top; ++N) {
    const auto& src = gc.monomials[static_cast<std::size_t>(N)];
    const auto& dst_index = index[static_cast<std::size_t>(N) + 1];
    Mat m = zero_mat(gc.dims[static_cast<std::size_t>(N) + 1],
                     gc.dims[static_cast<std::size_t>(N)]);
    for (std::size_t s = 0; s < src.size(); ++s) {
      for (int t = 0; t < d.coeff_dim; ++t) {
        GhostVecPoly in = vpoly_zero(d.coeff_dim);
        Vec e = zero_vec(d.coeff_dim);
        e(t) = 1;
        in.add_term(src[s], e);
        GhostVecPoly out = apply(d, in);
        const int col = static_cast<int>(s) * d.coeff_dim + t;
        for (auto& [mono, v] : out.terms) {
          auto it = dst_index.find(mono);
          if (it == dst_index.end())
            throw std::logic_error(
                "build_graded_complex: image escapes the next degree");
          for (int u = 0; u < d.coeff_dim; ++u)
            m(it->second * d.coeff_dim + u, col) = v(u);
        }
      }
    }
    gc.maps.push_back(std::move(m));
  }
  return gc;
}

struct CohomologyReport {
  bool nilpotent = false;
  std::string witness;       // square residual rendering when not nilpotent
  std::vector<int> space_dims;  // dim of degree N piece, N = 0..max_degree
  std::vector<int> ranks;       // rank of the map out of degree N
  std::vector<int> h_dims;      // dim H^N, N = 0..max_degree
};

inline CohomologyReport cohomology_dims(const OddDerivation& d,
                                        int max_degree) {
  CohomologyReport rep;
  rep.nilpotent = is_nilpotent(d, &rep.witness);
  GradedComplex gc = build_graded_complex(d, max_degree);
  rep.space_dims.assign(gc.dims.begin(),
                        gc.dims.begin() + (max_degree + 1));
  if (!rep.nilpotent) return rep;
  for (int N = 0; N <= max_degree; ++N)
    rep.ranks.push_back(rank_checked(gc.maps[static_cast<std::size_t>(N)]));
  for (int N = 0; N <= max_degree; ++N) {
    int h = rep.space_dims[static_cast<std::size_t>(N)] -
            rep.ranks[static_cast<std::size_t>(N)];
    if (N > 0) h -= rep.ranks[static_cast<std::size_t>(N) - 1];
    rep.h_dims.push_back(h);
  }
  return rep;
}

}  // namespace ghostcalc
