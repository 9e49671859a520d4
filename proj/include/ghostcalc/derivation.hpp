#pragma once

// The odd derivation S determined by a bracket family (structure constants),
// an optional coefficient action, and an optional coefficient algebra:
//
//   S(eta^j)       = - sum over tuples I of (1/mult_I!) C^j_I eta^I
//   S(coefficient) =   sum over tuples I of (k!/mult_I!) [rho_k(I) .] eta^I
//
// extended to products by the odd Leibniz rule (prefix passing signs). The
// squared images on ring generators and coefficient basis vectors decide
// nilpotency; they are the authoritative cross-check for every direct
// structure-equation checker in this library.

#include "ghostcalc/ghost_ring.hpp"
#include "ghostcalc/graded.hpp"
#include "ghostcalc/linf.hpp"
#include "ghostcalc/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ghostcalc {

// LeftSigned: S(ab) = S(a)b + (-1)^{gdeg a} a S(b), the odd-derivation rule;
// the passing factor per generator is (-1)^{gdeg}. RightSigned: the variant
// rule S(ab) = S(a)b + (-1)^{vdeg a} a S(b); its expansion is defined on
// normal forms and provided for the expansion-identity tests only.
enum class LeibnizSide { LeftSigned, RightSigned };

inline const char* kMixedParityDiagnostic =
    "the primary convention's commutation sign is not multiplicative across "
    "mixed internal-degree parities, so a Leibniz extension is "
    "representation-dependent; use the standard-koszul convention or a basis "
    "of uniform internal-degree parity for derivation-based operations";

struct AlgebroidEntry {
  std::vector<int> inputs;
  std::map<int, Vec> outputs;  // generator index -> coefficient-algebra coords
};

struct OddDerivation {
  GradedBasis basis;
  LeibnizSide side = LeibnizSide::LeftSigned;
  BracketFamily brackets;      // scalar structure constants (graded-symmetric)
  RepresentationFamily rep;    // coefficient action; module_dim 0 when absent
  bool has_rep = false;

  bool algebroid = false;      // constants take values in a coefficient algebra
  int coeff_dim = 1;
  std::vector<Mat> lmul;       // algebroid: left multiplication per basis element
  Vec unit;                    // algebroid: coordinates of 1

  // precomputed images on generators (coefficient vectors of dim 1, or of
  // coeff_dim in algebroid mode) and on coefficient basis vectors
  std::vector<std::map<GhostMonomial, Vec>> gen_image;
  std::vector<GhostVecPoly> coeff_image;

  int passing_sign(int gen) const {
    const int d = side == LeibnizSide::LeftSigned ? basis.gdeg(gen)
                                                  : basis.vdeg(gen);
    return (d & 1) ? -1 : 1;
  }
};

namespace detail {

inline void build_gen_images(OddDerivation& d,
                             const std::map<std::vector<int>,
                                            std::map<int, Vec>>& alg_table) {
  const int vdim = d.algebroid ? d.coeff_dim : 1;
  d.gen_image.assign(static_cast<std::size_t>(d.basis.dim()), {});
  if (!d.algebroid) {
    for (auto& [tuple, out] : d.brackets.table) {
      const Rat w = Rat(-1) / multiplicity_factorial(tuple);
      SignedMonomial sm = mono_from_word(d.basis, tuple);
      for (int j = 0; j < d.basis.dim(); ++j) {
        if (out(j) == 0) continue;
        Vec c = zero_vec(vdim);
        c(0) = out(j) * w;
        d.gen_image[static_cast<std::size_t>(j)][sm.mono] = c;
      }
    }
    return;
  }
  for (auto& [tuple, out] : alg_table) {
    const Rat w = Rat(-1) / multiplicity_factorial(tuple);
    SignedMonomial sm = mono_from_word(d.basis, tuple);
    for (auto& [j, coords] : out) {
      if (ghostcalc::is_zero(coords)) continue;
      d.gen_image[static_cast<std::size_t>(j)][sm.mono] = (coords * w).eval();
    }
  }
}

inline void build_coeff_images(OddDerivation& d) {
  d.coeff_image.assign(static_cast<std::size_t>(d.coeff_dim),
                       vpoly_zero(d.coeff_dim));
  if (!d.has_rep) return;
  for (auto& [tuple, mat] : d.rep.table) {
    const int k = static_cast<int>(tuple.size());
    const Rat w = factorial(k) / multiplicity_factorial(tuple);
    SignedMonomial sm = mono_from_word(d.basis, tuple);
    for (int t = 0; t < d.coeff_dim; ++t) {
      Vec col = (mat.col(t) * w).eval();
      if (ghostcalc::is_zero(col)) continue;
      d.coeff_image[static_cast<std::size_t>(t)].add_term(sm.mono, col);
    }
  }
}

}  // namespace detail

// Scalar/module-coefficient derivation. The bracket family and the optional
// representation must be validated; the representation acts on a module of
// its own dimension and the constants stay rational.
inline OddDerivation make_derivation(
    const GradedBasis& basis, const BracketFamily& brackets,
    const RepresentationFamily& rep = {},
    LeibnizSide side = LeibnizSide::LeftSigned) {
  if (!brackets.skew)
    throw std::invalid_argument(
        "make_derivation: bracket family must be graded-symmetric");
  if (!brackets.validated && !brackets.raw.empty())
    throw std::invalid_argument(
        "make_derivation: bracket family failed validation");
  const bool has_rep = !rep.table.empty();
  if (has_rep && !rep.validated)
    throw std::invalid_argument(
        "make_derivation: representation failed validation");
  if (basis.conv == Convention::VDeg && basis.mixed_vdeg_parity() &&
      (!brackets.table.empty() || has_rep))
    throw std::domain_error(kMixedParityDiagnostic);
  OddDerivation d;
  d.basis = basis;
  d.side = side;
  d.brackets = brackets;
  d.rep = rep;
  d.has_rep = has_rep;
  d.coeff_dim = has_rep ? rep.module_dim : 1;
  detail::build_gen_images(d, {});
  detail::build_coeff_images(d);
  return d;
}

// Algebroid-coefficient derivation: constants take values in a commutative
// unital algebra A given by left-multiplication matrices; the representation
// acts on A itself (module_dim = dim A).
inline OddDerivation make_algebroid_derivation(
    const GradedBasis& basis, const std::vector<AlgebroidEntry>& entries,
    const RepresentationFamily& rep, const std::vector<Mat>& lmul,
    const Vec& unit, LeibnizSide side = LeibnizSide::LeftSigned) {
  const int adim = static_cast<int>(lmul.size());
  if (adim < 1 || unit.size() != adim)
    throw std::invalid_argument(
        "make_algebroid_derivation: algebra dimension mismatch");
  for (const Mat& m : lmul)
    if (m.rows() != adim || m.cols() != adim)
      throw std::invalid_argument(
          "make_algebroid_derivation: multiplication matrices must be " +
          std::to_string(adim) + "x" + std::to_string(adim));
  if (!rep.table.empty() && (!rep.validated || rep.module_dim != adim))
    throw std::invalid_argument(
        "make_algebroid_derivation: representation must be validated and act "
        "on the coefficient algebra");
  if (basis.conv == Convention::VDeg && basis.mixed_vdeg_parity())
    throw std::domain_error(kMixedParityDiagnostic);

  // canonicalize entries onto sorted tuples under the exchange law
  std::map<std::vector<int>, std::map<int, Vec>> table;
  for (const AlgebroidEntry& e : entries) {
    const int arity = static_cast<int>(e.inputs.size());
    if (arity < 1 || arity > kDefaultMaxArity)
      throw std::invalid_argument(
          "make_algebroid_derivation: entry arity out of range");
    if (!detail::indices_in_range(basis, e.inputs))
      throw std::invalid_argument(
          "make_algebroid_derivation: generator index out of range");
    SortedWord s = sort_with_sign(basis, e.inputs);
    for (auto& [j, coords] : e.outputs) {
      if (j < 0 || j >= basis.dim() || coords.size() != adim)
        throw std::invalid_argument(
            "make_algebroid_derivation: bad entry output");
      if (s.zero) {
        if (!ghostcalc::is_zero(coords))
          throw std::invalid_argument(
              "make_algebroid_derivation: tuple repeats a square-zero "
              "generator, value must vanish");
        continue;
      }
      Vec canon = (coords * Rat(s.sign)).eval();
      auto& slot = table[s.word];
      auto it = slot.find(j);
      if (it == slot.end()) {
        slot[j] = canon;
      } else if (!ghostcalc::is_zero((canon - it->second).eval())) {
        throw std::invalid_argument(
            "make_algebroid_derivation: exchange-law conflict on tuple " +
            tuple_names(basis, s.word));
      }
    }
  }

  OddDerivation d;
  d.basis = basis;
  d.side = side;
  d.rep = rep;
  d.has_rep = !rep.table.empty();
  d.algebroid = true;
  d.coeff_dim = adim;
  d.lmul = lmul;
  d.unit = unit;
  detail::build_gen_images(d, table);
  detail::build_coeff_images(d);
  return d;
}

// S on the scalar ghost ring (brackets only). Invalid in algebroid mode,
// where generator images carry algebra coefficients.
inline GhostPolynomial apply_scalar(const OddDerivation& d,
                                    const GhostPolynomial& p) {
  if (d.algebroid)
    throw std::logic_error(
        "apply_scalar: algebroid constants are not scalar; use apply");
  GhostPolynomial out;
  for (auto& [M, c] : p.terms) {
    const std::vector<int> word = M.word();
    int sign = 1;
    for (std::size_t t = 0; t < word.size(); ++t) {
      const int i = word[t];
      const auto& image = d.gen_image[static_cast<std::size_t>(i)];
      for (auto& [J, cv] : image) {
        std::vector<int> full(word.begin(), word.begin() + t);
        const std::vector<int> jw = J.word();
        full.insert(full.end(), jw.begin(), jw.end());
        full.insert(full.end(), word.begin() + t + 1, word.end());
        SignedMonomial sm = mono_from_word(d.basis, full);
        if (sm.zero) continue;
        out.add_term(sm.mono, c * cv(0) * Rat(sign * sm.sign));
      }
      sign *= d.passing_sign(i);
    }
  }
  return out;
}

// S on coefficient-valued elements of (coefficients) (x) R.
inline GhostVecPoly apply(const OddDerivation& d, const GhostVecPoly& p) {
  if (p.dim != d.coeff_dim)
    throw std::invalid_argument("apply: coefficient dimension mismatch");
  GhostVecPoly out = vpoly_zero(d.coeff_dim);
  for (auto& [M, v] : p.terms) {
    // derivative of the coefficient vector, times eta^M on the right
    if (d.has_rep) {
      GhostVecPoly sv = vpoly_zero(d.coeff_dim);
      for (int t = 0; t < d.coeff_dim; ++t)
        if (v(t) != 0)
          sv = vpoly_add(sv,
                         vpoly_scale(d.coeff_image[static_cast<std::size_t>(t)],
                                     v(t)));
      for (auto& [I, w] : sv.terms) {
        SignedMonomial sm = mono_mul(d.basis, I, M);
        if (sm.zero) continue;
        out.add_term(sm.mono, (w * Rat(sm.sign)).eval());
      }
    }
    // Leibniz over the ghost word; algebra coefficients multiply onto v
    Mat vm;
    if (d.algebroid) {
      vm = zero_mat(d.coeff_dim, d.coeff_dim);
      for (int t = 0; t < d.coeff_dim; ++t)
        if (v(t) != 0) vm += d.lmul[static_cast<std::size_t>(t)] * v(t);
    }
    const std::vector<int> word = M.word();
    int sign = 1;
    for (std::size_t t = 0; t < word.size(); ++t) {
      const int i = word[t];
      const auto& image = d.gen_image[static_cast<std::size_t>(i)];
      for (auto& [J, cv] : image) {
        std::vector<int> full(word.begin(), word.begin() + t);
        const std::vector<int> jw = J.word();
        full.insert(full.end(), jw.begin(), jw.end());
        full.insert(full.end(), word.begin() + t + 1, word.end());
        SignedMonomial sm = mono_from_word(d.basis, full);
        if (sm.zero) continue;
        const Rat scale = cv(0) * Rat(sign * sm.sign);
        Vec coeff = d.algebroid ? Vec((vm * cv) * Rat(sign * sm.sign))
                                : Vec(v * scale);
        out.add_term(sm.mono, coeff);
      }
      sign *= d.passing_sign(i);
    }
  }
  return out;
}

struct SquareResidual {
  // squared image on each ring generator; scalar polynomials except in
  // algebroid mode, where coefficients live in the algebra
  std::vector<GhostVecPoly> generator;
  // squared image on each coefficient basis vector (empty without an action)
  std::vector<GhostVecPoly> coefficient;
  bool all_zero = true;
  std::string witness;  // first nonzero residual, rendered
};

inline SquareResidual square_residual(const OddDerivation& d) {
  if (d.side != LeibnizSide::LeftSigned)
    throw std::domain_error(
        "square_residual: nilpotency analysis is defined for the "
        "odd-derivation (left-signed) expansion");
  SquareResidual r;
  const int vdim = d.algebroid ? d.coeff_dim : 1;
  for (int j = 0; j < d.basis.dim(); ++j) {
    GhostVecPoly first = vpoly_zero(vdim);
    for (auto& [I, cv] : d.gen_image[static_cast<std::size_t>(j)])
      first.add_term(I, cv);
    GhostVecPoly second;
    if (d.algebroid) {
      second = apply(d, first);
    } else {
      // ring part only: the coefficient action never touches S on R
      GhostPolynomial fp;
      for (auto& [I, cv] : first.terms) fp.add_term(I, cv(0));
      GhostPolynomial sp = apply_scalar(d, fp);
      second = vpoly_zero(1);
      for (auto& [I, c] : sp.terms) {
        Vec w = zero_vec(1);
        w(0) = c;
        second.add_term(I, w);
      }
    }
    if (!second.is_zero() && r.all_zero) {
      r.all_zero = false;
      r.witness = "S^2(eta[" + d.basis.name(j) +
                  "]) = " + vpoly_to_string(d.basis, second);
    }
    r.generator.push_back(std::move(second));
  }
  if (d.has_rep || d.algebroid) {
    for (int t = 0; t < d.coeff_dim; ++t) {
      GhostVecPoly unit_elem = vpoly_zero(d.coeff_dim);
      Vec e = zero_vec(d.coeff_dim);
      e(t) = 1;
      unit_elem.add_term(mono_unit(), e);
      GhostVecPoly second = apply(d, apply(d, unit_elem));
      if (!second.is_zero() && r.all_zero) {
        r.all_zero = false;
        r.witness = "S^2(coefficient " + std::to_string(t) +
                    ") = " + vpoly_to_string(d.basis, second);
      }
      r.coefficient.push_back(std::move(second));
    }
  }
  return r;
}

inline bool is_nilpotent(const OddDerivation& d, std::string* witness = nullptr) {
  SquareResidual r = square_residual(d);
  if (witness) *witness = r.witness;
  return r.all_zero;
}

}  // namespace ghostcalc
