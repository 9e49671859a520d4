#pragma once

// Graded generator basis, permutation parity, Koszul crossing signs, and the
// (anti)symmetrization operators. Everything downstream builds its signs out
// of these primitives plus the ring commutation law in ghost_ring.hpp.

#include "ghostcalc/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace ghostcalc {

// Commutation conventions for the ghost ring.
//   VDeg        eta^a eta^b = -(-1)^(vdeg_a * vdeg_b) eta^b eta^a
//               ("primary" in instance files; vdeg-0 ghosts anticommute)
//   GhostParity eta^a eta^b = (-1)^(gpar_a * gpar_b) eta^b eta^a
//               ("standard-koszul"; super-commutation keyed on ghost parity)
// The two agree whenever all generators share one vdeg parity and differ on
// mixed-parity products.
enum class Convention { VDeg, GhostParity };

inline std::string convention_name(Convention c) {
  return c == Convention::VDeg ? "primary" : "standard-koszul";
}

struct Generator {
  std::string name;
  int vdeg = 0;  // internal degree of the underlying basis vector, >= 0
};

struct GradedBasis {
  std::vector<Generator> gens;
  Convention conv = Convention::VDeg;

  int dim() const { return static_cast<int>(gens.size()); }
  int vdeg(int i) const { return gens[static_cast<std::size_t>(i)].vdeg; }
  int gdeg(int i) const { return vdeg(i) + 1; }  // ghost degree of eta^i
  int gpar(int i) const { return gdeg(i) & 1; }  // ghost parity
  const std::string& name(int i) const {
    return gens[static_cast<std::size_t>(i)].name;
  }

  int index_of(const std::string& n) const {
    for (int i = 0; i < dim(); ++i)
      if (gens[static_cast<std::size_t>(i)].name == n) return i;
    return -1;
  }

  bool mixed_vdeg_parity() const {
    for (int i = 1; i < dim(); ++i)
      if ((vdeg(i) & 1) != (vdeg(0) & 1)) return true;
    return false;
  }

  // Sign s(a,b) with eta^a eta^b = s(a,b) eta^b eta^a. Symmetric, s*s = 1.
  // s(a,a) = -1 forces (eta^a)^2 = 0 (even vdeg under either convention).
  int swap_sign(int a, int b) const {
    if (conv == Convention::VDeg)
      return ((vdeg(a) * vdeg(b)) & 1) ? 1 : -1;
    return ((gpar(a) * gpar(b)) & 1) ? -1 : 1;
  }

  bool square_vanishes(int a) const { return swap_sign(a, a) == -1; }
};

// Permutations in one-line form over {0..n-1}: perm[t] is the source position
// whose element lands at target position t, i.e. the permuted word w' has
// w'[t] = w[perm[t]].
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
  return p;
}

// compose(a, b)[t] = a[b[t]]: applying b's reordering to the word a*w.
// With the action above, b_act(a_act(w)) = compose(a, b) acting on w.
inline Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t t = 0; t < b.size(); ++t)
    c[t] = a[static_cast<std::size_t>(b[t])];
  return c;
}

inline Perm invert(const Perm& p) {
  Perm q(p.size());
  for (std::size_t t = 0; t < p.size(); ++t)
    q[static_cast<std::size_t>(p[t])] = static_cast<int>(t);
  return q;
}

template <typename T>
inline std::vector<T> apply_perm(const Perm& p, const std::vector<T>& w) {
  std::vector<T> out(p.size());
  for (std::size_t t = 0; t < p.size(); ++t)
    out[t] = w[static_cast<std::size_t>(p[t])];
  return out;
}

// (-1)^sigma via inversion count.
inline int permutation_parity(const Perm& p) {
  int inv = 0;
  for (std::size_t s = 0; s < p.size(); ++s)
    for (std::size_t t = s + 1; t < p.size(); ++t)
      if (p[s] > p[t]) ++inv;
  return (inv & 1) ? -1 : 1;
}

// Koszul crossing sign e(sigma) for reordering a word with the given source
// degree list into sigma's order: each inverted pair of source elements
// contributes (-1)^(deg_p * deg_q).
inline int koszul_sign(const Perm& p, const std::vector<int>& degs) {
  if (p.size() != degs.size())
    throw std::invalid_argument("koszul_sign: size mismatch");
  int odd = 0;
  for (std::size_t s = 0; s < p.size(); ++s)
    for (std::size_t t = s + 1; t < p.size(); ++t)
      if (p[s] > p[t])
        odd ^= (degs[static_cast<std::size_t>(p[s])] &
                degs[static_cast<std::size_t>(p[t])] & 1);
  return odd ? -1 : 1;
}

constexpr int kMaxPermN = 8;

// All of S_n in lexicographic order. Refuses beyond kMaxPermN (8! = 40320).
inline std::vector<Perm> all_permutations(int n) {
  if (n < 0 || n > kMaxPermN)
    throw std::invalid_argument(
        "all_permutations: n out of range (exhaustive sums support n <= 8)");
  std::vector<Perm> out;
  Perm p = identity_perm(n);
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Result of bringing a word of generator indices into nondecreasing order
// under the basis's commutation law. `zero` is set when the word contains a
// repeated index whose square vanishes.
struct SortedWord {
  std::vector<int> word;
  int sign = 1;
  bool zero = false;
};

inline SortedWord sort_with_sign(const GradedBasis& b,
                                 std::vector<int> w) {
  SortedWord r;
  int sign = 1;
  // Bubble sort; equal elements never swap, so the sign is exactly the
  // product of crossing signs of strict inversions.
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    for (std::size_t j = 0; j + 1 < w.size() - i; ++j)
      if (w[j] > w[j + 1]) {
        sign *= b.swap_sign(w[j], w[j + 1]);
        std::swap(w[j], w[j + 1]);
      }
  for (std::size_t j = 0; j + 1 < w.size(); ++j)
    if (w[j] == w[j + 1] && b.square_vanishes(w[j])) r.zero = true;
  r.word = std::move(w);
  r.sign = sign;
  return r;
}

// Sign relating two words that are permutations of each other:
// word `from` equals reorder_sign * word `to` in the ghost ring.
inline int reorder_sign(const GradedBasis& b, const std::vector<int>& from,
                        const std::vector<int>& to) {
  SortedWord a = sort_with_sign(b, from);
  SortedWord c = sort_with_sign(b, to);
  if (a.word != c.word)
    throw std::invalid_argument("reorder_sign: words are not permutations");
  return a.sign * c.sign;
}

// Antisymmetrizer: (A f)(w) = sum_sigma (-1)^sigma e(sigma) f(sigma * w),
// with e computed from the supplied per-slot degree list.
template <typename T, typename F>
inline T antisymmetrize(const F& f, const std::vector<int>& tuple,
                        const std::vector<int>& degs, const T& zero) {
  T acc = zero;
  for (const Perm& p : all_permutations(static_cast<int>(tuple.size()))) {
    int s = permutation_parity(p) * koszul_sign(p, degs);
    acc += f(apply_perm(p, tuple)) * Rat(s);
  }
  return acc;
}

// Symmetrizer: same sum without the permutation parity factor.
template <typename T, typename F>
inline T symmetrize(const F& f, const std::vector<int>& tuple,
                    const std::vector<int>& degs, const T& zero) {
  T acc = zero;
  for (const Perm& p : all_permutations(static_cast<int>(tuple.size()))) {
    int s = koszul_sign(p, degs);
    acc += f(apply_perm(p, tuple)) * Rat(s);
  }
  return acc;
}

// Nondecreasing index tuples of the given length, skipping any tuple that
// repeats an index whose ghost square vanishes. These are exactly the words
// of nonzero normal-form monomials, and the canonical keys for skew storage.
inline void enumerate_sorted_tuples_rec(const GradedBasis& b, int len,
                                        int start, std::vector<int>& cur,
                                        std::vector<std::vector<int>>& out) {
  if (len == 0) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i < b.dim(); ++i) {
    if (!cur.empty() && cur.back() == i && b.square_vanishes(i)) continue;
    cur.push_back(i);
    enumerate_sorted_tuples_rec(b, len - 1, i, cur, out);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> enumerate_sorted_tuples(
    const GradedBasis& b, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  enumerate_sorted_tuples_rec(b, len, 0, cur, out);
  return out;
}

// All ordered tuples over the basis (cartesian power).
inline std::vector<std::vector<int>> enumerate_ordered_tuples(
    const GradedBasis& b, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(len), 0);
  if (len == 0) {
    out.push_back({});
    return out;
  }
  while (true) {
    out.push_back(cur);
    int pos = len - 1;
    while (pos >= 0) {
      if (++cur[static_cast<std::size_t>(pos)] < b.dim()) break;
      cur[static_cast<std::size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

// prod(multiplicity!) over the repeated indices of a tuple.
inline Rat multiplicity_factorial(const std::vector<int>& tuple) {
  std::map<int, int> mult;
  for (int i : tuple) ++mult[i];
  Rat f(1);
  for (auto& [_, m] : mult) f *= factorial(m);
  return f;
}

}  // namespace ghostcalc
