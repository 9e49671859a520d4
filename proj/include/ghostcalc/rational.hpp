#pragma once

// Exact rational scalar used everywhere. GMP-backed; no floating point
// enters any computation in this library.

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <string>

namespace Eigen {

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
  using Real = mpq_class;
  using NonInteger = mpq_class;
  using Nested = mpq_class;
  using Literal = long;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 6,
    AddCost = 150,
    MulCost = 100,
  };
};

}  // namespace Eigen

namespace ghostcalc {

using Rat = mpq_class;

using Vec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using Mat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;

inline Vec zero_vec(Eigen::Index n) { return Vec::Zero(n); }
inline Mat zero_mat(Eigen::Index r, Eigen::Index c) { return Mat::Zero(r, c); }

inline bool is_zero(const Vec& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

inline bool is_zero(const Mat& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) return false;
  return true;
}

// Accepts "p", "-p", "p/q" with nonzero q. Returns nullopt on anything else.
inline std::optional<Rat> rat_from_string(const std::string& s) {
  if (s.empty()) return std::nullopt;
  // mpq set_str accepts whitespace and base prefixes we do not want; vet first.
  std::size_t slash = std::string::npos;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      if (slash != std::string::npos) return std::nullopt;
      slash = i;
    } else if (c == '-') {
      if (i != 0 && i != slash + 1) return std::nullopt;
    } else if (c < '0' || c > '9') {
      return std::nullopt;
    }
  }
  auto digits_ok = [](const std::string& t) {
    std::string u = (!t.empty() && t[0] == '-') ? t.substr(1) : t;
    return !u.empty();
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(num) || !digits_ok(den)) return std::nullopt;
  Rat r;
  if (r.set_str(num + "/" + den, 10) != 0) return std::nullopt;
  if (r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

// n! as an exact rational; n is small everywhere in this library.
inline Rat factorial(int n) {
  Rat f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace ghostcalc
