#pragma once

// Exact rank computation over Q by two independent routes: fraction-free
// Bareiss elimination on a denominator-cleared integer matrix, and plain
// Gauss elimination on the rational matrix. Used for cohomology dimensions;
// the two routes cross-check each other in tests.

#include "ghostcalc/rational.hpp"

#include <stdexcept>
#include <vector>

namespace ghostcalc {

inline int rank_gauss(Mat a) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  int rank = 0;
  Eigen::Index pr = 0;
  for (Eigen::Index c = 0; c < cols && pr < rows; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = pr; r < rows; ++r)
      if (a(r, c) != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != pr) a.row(piv).swap(a.row(pr));
    const Rat inv = Rat(1) / a(pr, c);
    for (Eigen::Index cc = c; cc < cols; ++cc) a(pr, cc) *= inv;
    for (Eigen::Index r = 0; r < rows; ++r) {
      if (r == pr || a(r, c) == 0) continue;
      const Rat f = a(r, c);
      for (Eigen::Index cc = c; cc < cols; ++cc) a(r, cc) -= f * a(pr, cc);
    }
    ++pr;
    ++rank;
  }
  return rank;
}

// Row-wise denominator clearing; scaling a row by a nonzero integer
// preserves rank.
inline std::vector<std::vector<mpz_class>> clear_denominators(const Mat& a) {
  std::vector<std::vector<mpz_class>> m(
      static_cast<size_t>(a.rows()),
      std::vector<mpz_class>(static_cast<size_t>(a.cols())));
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    mpz_class l = 1;
    for (Eigen::Index c = 0; c < a.cols(); ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(r, c).get_den().get_mpz_t());
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      mpq_class scaled = a(r, c) * Rat(l);
      scaled.canonicalize();
      if (scaled.get_den() != 1)
        throw std::logic_error("clear_denominators: residual denominator");
      m[static_cast<size_t>(r)][static_cast<size_t>(c)] = scaled.get_num();
    }
  }
  return m;
}

inline int rank_bareiss(const Mat& a) {
  auto m = clear_denominators(a);
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  int rank = 0;
  size_t pr = 0;
  mpz_class div_prev = 1;
  for (size_t c = 0; c < cols && pr < rows; ++c) {
    size_t piv = rows;
    for (size_t r = pr; r < rows; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv == rows) continue;
    if (piv != pr) m[piv].swap(m[pr]);
    const mpz_class pivot = m[pr][c];
    for (size_t r = pr + 1; r < rows; ++r) {
      for (size_t cc = c + 1; cc < cols; ++cc) {
        mpz_class num = m[r][cc] * pivot - m[r][c] * m[pr][cc];
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), div_prev.get_mpz_t());
        m[r][cc] = q;
      }
      m[r][c] = 0;
    }
    div_prev = pivot;
    ++pr;
    ++rank;
  }
  return rank;
}

// Both routes, verified to agree.
inline int rank_checked(const Mat& a) {
  const int rb = rank_bareiss(a);
  const int rg = rank_gauss(a);
  if (rb != rg) throw std::logic_error("rank routes disagree");
  return rb;
}

}  // namespace ghostcalc
