#pragma once

// The graded-commutative ghost ring F[eta^i]: normal-form monomials, scalar
// polynomials, and module-vector-valued polynomials. All products reduce to
// the canonical nondecreasing-index form with the sign accumulated from the
// basis's commutation law; coefficients are exact rationals.

#include "ghostcalc/graded.hpp"
#include "ghostcalc/rational.hpp"

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace ghostcalc {

// Normal form: strictly increasing indices, exponents >= 1; an index whose
// ghost square vanishes never carries exponent > 1 in a nonzero monomial.
struct GhostMonomial {
  std::vector<std::pair<int, int>> factors;  // (generator index, exponent)

  bool operator<(const GhostMonomial& o) const { return factors < o.factors; }
  bool operator==(const GhostMonomial& o) const {
    return factors == o.factors;
  }

  bool is_unit() const { return factors.empty(); }

  int length() const {
    int n = 0;
    for (auto& [_, e] : factors) n += e;
    return n;
  }

  std::vector<int> word() const {
    std::vector<int> w;
    for (auto& [i, e] : factors)
      for (int t = 0; t < e; ++t) w.push_back(i);
    return w;
  }

  int ghost_degree(const GradedBasis& b) const {
    int d = 0;
    for (auto& [i, e] : factors) d += e * b.gdeg(i);
    return d;
  }

  int vdegree(const GradedBasis& b) const {
    int d = 0;
    for (auto& [i, e] : factors) d += e * b.vdeg(i);
    return d;
  }
};

inline GhostMonomial mono_unit() { return {}; }

struct SignedMonomial {
  GhostMonomial mono;
  int sign = 1;
  bool zero = false;
};

// Normal form of an arbitrary word of generator indices.
inline SignedMonomial mono_from_word(const GradedBasis& b,
                                     const std::vector<int>& w) {
  SortedWord s = sort_with_sign(b, w);
  SignedMonomial r;
  r.sign = s.sign;
  r.zero = s.zero;
  if (s.zero) return r;
  for (int i : s.word) {
    if (!r.mono.factors.empty() && r.mono.factors.back().first == i)
      ++r.mono.factors.back().second;
    else
      r.mono.factors.push_back({i, 1});
  }
  return r;
}

inline SignedMonomial mono_mul(const GradedBasis& b, const GhostMonomial& x,
                               const GhostMonomial& y) {
  std::vector<int> w = x.word();
  std::vector<int> yw = y.word();
  w.insert(w.end(), yw.begin(), yw.end());
  return mono_from_word(b, w);
}

struct GhostPolynomial {
  std::map<GhostMonomial, Rat> terms;

  bool is_zero() const { return terms.empty(); }

  void add_term(const GhostMonomial& m, const Rat& c) {
    if (c == 0) return;
    Rat& slot = terms[m];
    slot += c;
    if (slot == 0) terms.erase(m);
  }
};

inline GhostPolynomial poly_from_mono(const GhostMonomial& m,
                                      const Rat& c = Rat(1)) {
  GhostPolynomial p;
  p.add_term(m, c);
  return p;
}

inline GhostPolynomial poly_unit() { return poly_from_mono(mono_unit()); }

inline GhostPolynomial poly_add(const GhostPolynomial& a,
                                const GhostPolynomial& b) {
  GhostPolynomial r = a;
  for (auto& [m, c] : b.terms) r.add_term(m, c);
  return r;
}

inline GhostPolynomial poly_scale(const GhostPolynomial& a, const Rat& s) {
  GhostPolynomial r;
  if (s == 0) return r;
  for (auto& [m, c] : a.terms) r.terms[m] = c * s;
  return r;
}

inline GhostPolynomial poly_sub(const GhostPolynomial& a,
                                const GhostPolynomial& b) {
  return poly_add(a, poly_scale(b, Rat(-1)));
}

inline GhostPolynomial poly_mul(const GradedBasis& bas,
                                const GhostPolynomial& a,
                                const GhostPolynomial& b) {
  GhostPolynomial r;
  for (auto& [ma, ca] : a.terms)
    for (auto& [mb, cb] : b.terms) {
      SignedMonomial p = mono_mul(bas, ma, mb);
      if (p.zero) continue;
      r.add_term(p.mono, ca * cb * Rat(p.sign));
    }
  return r;
}

// True when every monomial has the same ghost-degree parity; `parity` is set
// to it (0 for the zero polynomial).
inline bool homogeneous_gparity(const GradedBasis& b,
                                const GhostPolynomial& p, int& parity) {
  parity = 0;
  bool first = true;
  for (auto& [m, _] : p.terms) {
    int q = m.ghost_degree(b) & 1;
    if (first) {
      parity = q;
      first = false;
    } else if (q != parity) {
      return false;
    }
  }
  return true;
}

inline std::string mono_to_string(const GradedBasis& b,
                                  const GhostMonomial& m) {
  if (m.is_unit()) return "1";
  std::ostringstream os;
  bool first = true;
  for (auto& [i, e] : m.factors) {
    if (!first) os << "*";
    first = false;
    os << "eta[" << b.name(i) << "]";
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

inline std::string poly_to_string(const GradedBasis& b,
                                  const GhostPolynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : p.terms) {
    if (!first) os << " + ";
    first = false;
    os << "(" << rat_to_string(c) << ")";
    if (!m.is_unit()) os << "*" << mono_to_string(b, m);
  }
  return os.str();
}

// Module-vector-valued ghost polynomial: elements of (coefficient space) (x) R.
// Used for derivation images with matrix actions on the coefficients and for
// ghost-side cochains.
struct GhostVecPoly {
  int dim = 0;
  std::map<GhostMonomial, Vec> terms;

  bool is_zero() const { return terms.empty(); }

  void add_term(const GhostMonomial& m, const Vec& v) {
    if (ghostcalc::is_zero(v)) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, v);
      return;
    }
    it->second += v;
    if (ghostcalc::is_zero(it->second)) terms.erase(it);
  }
};

inline GhostVecPoly vpoly_zero(int dim) {
  GhostVecPoly p;
  p.dim = dim;
  return p;
}

inline GhostVecPoly vpoly_add(const GhostVecPoly& a, const GhostVecPoly& b) {
  GhostVecPoly r = a;
  for (auto& [m, v] : b.terms) r.add_term(m, v);
  return r;
}

inline GhostVecPoly vpoly_scale(const GhostVecPoly& a, const Rat& s) {
  GhostVecPoly r = vpoly_zero(a.dim);
  if (s == 0) return r;
  for (auto& [m, v] : a.terms) r.terms[m] = (v * s).eval();
  return r;
}

inline GhostVecPoly vpoly_sub(const GhostVecPoly& a, const GhostVecPoly& b) {
  return vpoly_add(a, vpoly_scale(b, Rat(-1)));
}

// (scalar polynomial) * (vector polynomial), multiplying monomials on the
// given side of the existing ones.
inline GhostVecPoly vpoly_mul_scalar_left(const GradedBasis& bas,
                                          const GhostPolynomial& a,
                                          const GhostVecPoly& x) {
  GhostVecPoly r = vpoly_zero(x.dim);
  for (auto& [ma, ca] : a.terms)
    for (auto& [mx, vx] : x.terms) {
      SignedMonomial p = mono_mul(bas, ma, mx);
      if (p.zero) continue;
      r.add_term(p.mono, (vx * Rat(ca * Rat(p.sign))).eval());
    }
  return r;
}

inline GhostVecPoly vpoly_mul_scalar_right(const GradedBasis& bas,
                                           const GhostVecPoly& x,
                                           const GhostPolynomial& a) {
  GhostVecPoly r = vpoly_zero(x.dim);
  for (auto& [mx, vx] : x.terms)
    for (auto& [ma, ca] : a.terms) {
      SignedMonomial p = mono_mul(bas, mx, ma);
      if (p.zero) continue;
      r.add_term(p.mono, (vx * Rat(ca * Rat(p.sign))).eval());
    }
  return r;
}

inline std::string vpoly_to_string(const GradedBasis& b,
                                   const GhostVecPoly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, v] : p.terms) {
    if (!first) os << " + ";
    first = false;
    os << "[";
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (i) os << ", ";
      os << rat_to_string(v(i));
    }
    os << "]";
    if (!m.is_unit()) os << "*" << mono_to_string(b, m);
  }
  return os.str();
}

}  // namespace ghostcalc
