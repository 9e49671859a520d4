#include "doctest.h"
#include "ghostcalc/linf.hpp"
#include "instances.hpp"

#include <map>
#include <random>
#include <utility>
#include <vector>

using namespace ghostcalc;

namespace {

// ---- independent classical oracles, built straight from raw constants ----

// antisymmetric constants: c[(i,j)] with i < j; bracket of (i,j) extended by
// antisymmetry, squares zero
using LieConstants = std::map<std::pair<int, int>, std::map<int, Rat>>;

Vec lie_bracket_oracle(int dim, const LieConstants& c, int i, int j) {
  Vec out = zero_vec(dim);
  if (i == j) return out;
  int a = std::min(i, j), b = std::max(i, j);
  auto it = c.find({a, b});
  if (it == c.end()) return out;
  for (auto& [k, coef] : it->second) out(k) += (i < j) ? coef : -coef;
  return out;
}

// sum of cyclic [[i,j],k] terms; zero for every triple iff Jacobi holds
Vec jacobi_residual_oracle(int dim, const LieConstants& c, int i, int j,
                           int k) {
  Vec out = zero_vec(dim);
  auto add = [&](int p, int q, int r) {
    Vec inner = lie_bracket_oracle(dim, c, p, q);
    for (int t = 0; t < dim; ++t) {
      if (inner(t) == 0) continue;
      out += lie_bracket_oracle(dim, c, t, r) * inner(t);
    }
  };
  add(i, j, k);
  add(j, k, i);
  add(k, i, j);
  return out;
}

bool jacobi_holds_oracle(int dim, const LieConstants& c) {
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k)
        if (!is_zero(jacobi_residual_oracle(dim, c, i, j, k))) return false;
  return true;
}

// associator (T1 T2) T3 - T1 (T2 T3) from an ordered product table
Vec associator_oracle(const GradedBasis& b, const BracketFamily& f, int i,
                      int j, int k) {
  auto mul = [&](const Vec& x, const Vec& y) {
    Vec out = zero_vec(b.dim());
    for (int p = 0; p < b.dim(); ++p)
      for (int q = 0; q < b.dim(); ++q) {
        if (x(p) == 0 || y(q) == 0) continue;
        Vec prod = bracket_eval(b, f, {p, q});
        out += prod * Rat(x(p) * y(q));
      }
    return out;
  };
  Vec ei = zero_vec(b.dim()), ej = zero_vec(b.dim()), ek = zero_vec(b.dim());
  ei(i) = 1;
  ej(j) = 1;
  ek(k) = 1;
  return (mul(mul(ei, ej), ek) - mul(ei, mul(ej, ek))).eval();
}

bool associative_oracle(const GradedBasis& b, const BracketFamily& f) {
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      for (int k = 0; k < b.dim(); ++k)
        if (!is_zero(associator_oracle(b, f, i, j, k))) return false;
  return true;
}

BracketFamily lie_family(const GradedBasis& b, const LieConstants& c) {
  BracketFamily f = brackets_from_lie(b, c);
  auto errs = validate_family(b, f);
  REQUIRE(errs.empty());
  return f;
}

LieConstants random_constants(std::mt19937& rng, int dim, int density) {
  std::uniform_int_distribution<int> coef(-2, 2);
  std::uniform_int_distribution<int> pickpct(0, 99);
  LieConstants c;
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        if (pickpct(rng) < density) {
          int v = coef(rng);
          if (v != 0) c[{i, j}][k] = Rat(v);
        }
  return c;
}

}  // namespace

TEST_CASE("split enumeration has binomial size and consistent signs") {
  int count = 0;
  for_each_split(5, 2, [&](const std::vector<int>& first,
                           const std::vector<int>& rest) {
    ++count;
    CHECK(first.size() == 2);
    CHECK(rest.size() == 3);
    CHECK(std::is_sorted(first.begin(), first.end()));
    CHECK(std::is_sorted(rest.begin(), rest.end()));
  });
  CHECK(count == 10);

  // split_sign is the ring reorder sign of the blocked word
  GradedBasis b = examples::graded_basis();
  std::vector<int> M{0, 3, 4, 3};
  for_each_split(4, 2, [&](const std::vector<int>& first,
                           const std::vector<int>& rest) {
    std::vector<int> w = detail::pick(M, first);
    std::vector<int> r = detail::pick(M, rest);
    w.insert(w.end(), r.begin(), r.end());
    CHECK(detail::split_sign(b, M, first, rest) == reorder_sign(b, w, M));
  });
}

TEST_CASE("family validation canonicalizes and reports defects") {
  GradedBasis b = examples::sl2_basis();

  SUBCASE("natural-order entries land on sorted keys with the right sign") {
    BracketFamily f = examples::sl2_brackets();
    CHECK(f.validated);
    CHECK(f.max_arity == 2);
    // (h,e) -> 2e was given; canonical (e,h) carries the flipped sign
    Vec v = f.table.at({0, 2});
    CHECK(v(0) == Rat(-2));
    // evaluation restores the natural order
    CHECK(bracket_eval(b, f, {2, 0})(0) == Rat(2));
    CHECK(bracket_eval(b, f, {0, 2})(0) == Rat(-2));
    CHECK(is_zero(bracket_eval(b, f, {0, 0})));
  }

  SUBCASE("exchange-law conflicts are reported") {
    BracketFamily f;
    f.skew = true;
    f.raw = {{{0, 1}, {{2, Rat(1)}}}, {{1, 0}, {{2, Rat(1)}}}};
    auto errs = validate_family(b, f);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("exchange") != std::string::npos);
    CHECK_FALSE(f.validated);
    CHECK_FALSE(check_skew(b, f).pass);
  }

  SUBCASE("repeated square-zero generator forces a zero value") {
    BracketFamily f;
    f.skew = true;
    f.raw = {{{0, 0}, {{2, Rat(1)}}}};
    auto errs = validate_family(b, f);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("square") != std::string::npos);
  }

  SUBCASE("degree homogeneity is enforced for brackets") {
    GradedBasis gb = examples::graded_basis();
    BracketFamily f;
    f.skew = true;
    // l_2(x,y) = w has degree 1 != 0+0, not homogeneous
    f.raw = {{{0, 1}, {{3, Rat(1)}}}};
    auto errs = validate_family(gb, f);
    REQUIRE(errs.size() == 1);
    CHECK(errs[0].find("degree") != std::string::npos);
  }

  SUBCASE("arity and index range diagnostics") {
    BracketFamily f;
    f.skew = true;
    f.raw = {{{}, {{0, Rat(1)}}}};
    CHECK_FALSE(validate_family(b, f).empty());
    BracketFamily g;
    g.skew = true;
    g.raw = {{{0, 7}, {{0, Rat(1)}}}};
    CHECK_FALSE(validate_family(b, g).empty());
    BracketFamily h;
    h.skew = true;
    h.raw = {{{0, 1, 0, 1, 0, 1, 0}, {{2, Rat(1)}}}};
    CHECK_FALSE(validate_family(b, h, 6).empty());
  }

  SUBCASE("ordered families reject duplicate literal tuples") {
    GradedBasis db = examples::dual_basis();
    BracketFamily f;
    f.skew = false;
    f.raw = {{{0, 1}, {{1, Rat(1)}}}, {{0, 1}, {{1, Rat(2)}}}};
    CHECK_FALSE(validate_family(db, f).empty());
  }
}

TEST_CASE("representation validation mirrors the family rules") {
  GradedBasis b = examples::sl2_basis();
  RepresentationFamily r = examples::sl2_rep();
  CHECK(r.validated);
  CHECK(r.max_arity == 1);
  CHECK(check_skew(b, r).pass);

  SUBCASE("shape mismatch is an error") {
    RepresentationFamily bad;
    bad.skew = true;
    bad.module_dim = 2;
    bad.raw = {{{0}, zero_mat(3, 2)}};
    CHECK_FALSE(validate_representation(b, bad).empty());
  }

  SUBCASE("exchange conflict on a two-slot entry") {
    RepresentationFamily bad;
    bad.skew = true;
    bad.module_dim = 1;
    Mat one = zero_mat(1, 1);
    one(0, 0) = 1;
    bad.raw = {{{0, 1}, one}, {{1, 0}, one}};
    CHECK_FALSE(validate_representation(b, bad).empty());
  }
}

TEST_CASE("classical bracket check is exactly the Jacobi identity") {
  std::mt19937 rng(211);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int dim = 3 + (trial % 2);
    GradedBasis b = examples::abelian_basis(dim);
    LieConstants c = random_constants(rng, dim, trial < 30 ? 15 : 45);
    BracketFamily f = lie_family(b, c);
    bool jacobi = jacobi_holds_oracle(dim, c);
    CheckReport rep = check_cl_infinity(b, f);
    CHECK(rep.pass == jacobi);
    (jacobi ? positives : negatives)++;
  }
  // the sample must exercise both verdicts
  CHECK(positives > 0);
  CHECK(negatives > 0);
}

TEST_CASE("named Lie algebras pass; a single-constant corruption fails") {
  GradedBasis b = examples::sl2_basis();
  CHECK(check_cl_infinity(b, examples::sl2_brackets()).pass);
  CHECK(check_cl_infinity(examples::heisenberg_basis(),
                          examples::heisenberg_brackets())
            .pass);
  CHECK(check_cl_infinity(examples::abelian_basis(4),
                          examples::abelian_brackets(examples::abelian_basis(4)))
            .pass);

  // [h,e] = 3e instead of 2e breaks Jacobi on (e,f,h)
  BracketFamily bad;
  bad.skew = true;
  bad.raw = {{{0, 1}, {{2, Rat(1)}}},
             {{2, 0}, {{0, Rat(3)}}},
             {{2, 1}, {{1, Rat(-2)}}}};
  REQUIRE(validate_family(b, bad).empty());
  CheckReport rep = check_cl_infinity(b, bad);
  CHECK_FALSE(rep.pass);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0].context.find("(e,f,h)") != std::string::npos);
}

TEST_CASE("graded example: mixed-arity structure equations hold") {
  GradedBasis b = examples::graded_basis();
  BracketFamily f = examples::graded_brackets();
  CHECK(check_cl_infinity(b, f).pass);

  // pinned spot values on the tuple (x,u): the two contributing terms
  // cancel with relative weight one
  std::vector<int> M{0, 4};
  Vec t12 = cl_structure_term(b, f, M, 1, 2, false);
  Vec t21 = cl_structure_term(b, f, M, 2, 1, false);
  CHECK(t12(3) == Rat(1));   // l_1(l_2(x,u)) = +w
  CHECK(t21(3) == Rat(-1));  // insertion side contributes -w
  CHECK(is_zero(cl_structure_residual(b, f, M)));

  // flipping one binary coordinate breaks the same equation
  BracketFamily g = f;
  g.raw[2].outputs[4] = Rat(1);  // l_2(x,u) = +u
  REQUIRE(validate_family(b, g).empty());
  CheckReport rep = check_cl_infinity(b, g);
  CHECK_FALSE(rep.pass);
  bool found = false;
  for (auto& v : rep.violations)
    if (v.context.find("(x,u)") != std::string::npos) found = true;
  CHECK(found);
}

TEST_CASE("symmetric-group mode equals the unshuffle mode termwise") {
  GradedBasis gb = examples::graded_basis();
  BracketFamily gf = examples::graded_brackets();
  // also on a deliberately inconsistent family: the identity is structural
  BracketFamily bad = gf;
  bad.raw[1].outputs[3] = Rat(5);
  REQUIRE(validate_family(gb, bad).empty());

  for (const BracketFamily* f : {&gf, &bad})
    for (int n = 1; n <= 5; ++n)
      for (const auto& M : enumerate_sorted_tuples(gb, n))
        for (int m = 1; m <= n; ++m) {
          Vec a = cl_structure_term(gb, *f, M, n + 1 - m, m, false);
          Vec c = cl_structure_term(gb, *f, M, n + 1 - m, m, true);
          CHECK(is_zero((a - c).eval()));
        }

  CheckOptions full;
  full.full_mode = true;
  full.max_total_arity = 5;
  CheckOptions plain;
  plain.max_total_arity = 5;
  CHECK(check_cl_infinity(gb, gf, full).pass ==
        check_cl_infinity(gb, gf, plain).pass);
}

TEST_CASE("ordered product check is exactly associativity") {
  GradedBasis db = examples::dual_basis();
  CHECK(associative_oracle(db, examples::dual_product()));
  CHECK(check_ga_infinity(db, examples::dual_product()).pass);

  GradedBasis ub = examples::ut2_basis();
  CHECK(associative_oracle(ub, examples::ut2_product()));
  CHECK(check_ga_infinity(ub, examples::ut2_product()).pass);

  std::mt19937 rng(223);
  std::uniform_int_distribution<int> coef(-1, 2);
  std::uniform_int_distribution<int> pct(0, 99);
  int positives = 0, negatives = 0;
  for (int trial = 0; trial < 120; ++trial) {
    // sparse tables in the first batch so associative samples actually occur
    const int density = trial < 40 ? 20 : 80;
    GradedBasis b = examples::abelian_basis(2);
    BracketFamily f;
    f.skew = false;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        FamilyEntry e;
        e.inputs = {i, j};
        for (int k = 0; k < 2; ++k) {
          if (pct(rng) >= density) continue;
          int v = coef(rng);
          if (v != 0) e.outputs[k] = Rat(v);
        }
        if (!e.outputs.empty()) f.raw.push_back(std::move(e));
      }
    REQUIRE(validate_family(b, f).empty());
    bool assoc = associative_oracle(b, f);
    CHECK(check_ga_infinity(b, f).pass == assoc);
    (assoc ? positives : negatives)++;
  }
  CHECK(positives > 0);
  CHECK(negatives > 0);

  // a unary operation participates through the graded Leibniz equation:
  // with m_2 = 0, the check is exactly m_1 being a squared-zero map
  GradedBasis b2{{{"a", 1}, {"b", 0}}, Convention::GhostParity};
  BracketFamily d1;
  d1.skew = false;
  d1.raw = {{{0}, {{1, Rat(1)}}}};  // m_1(a) = b, m_1(b) = 0
  REQUIRE(validate_family(b2, d1).empty());
  CHECK(check_ga_infinity(b2, d1).pass);
  BracketFamily d2 = d1;
  d2.raw.push_back({{1}, {{0, Rat(1)}}});  // now m_1(m_1(a)) = a != 0
  REQUIRE(!validate_family(b2, d2).empty());  // degree check already objects
  GradedBasis b3{{{"a", 2}, {"b", 1}, {"c", 0}}, Convention::GhostParity};
  BracketFamily d3;
  d3.skew = false;
  d3.raw = {{{0}, {{1, Rat(1)}}}, {{1}, {{2, Rat(1)}}}};  // m_1(m_1(a)) = c
  REQUIRE(validate_family(b3, d3).empty());
  CHECK_FALSE(check_ga_infinity(b3, d3).pass);
}

TEST_CASE("checkers refuse the wrong exchange convention") {
  GradedBasis b = examples::sl2_basis();
  CHECK_THROWS_AS(check_ga_infinity(b, examples::sl2_brackets()),
                  std::invalid_argument);
  CHECK_THROWS_AS(check_cl_infinity(examples::dual_basis(),
                                    examples::dual_product()),
                  std::invalid_argument);
  RepresentationFamily r = examples::sl2_rep();
  CHECK_THROWS_AS(check_representation(examples::dual_basis(),
                                       examples::dual_product(), r),
                  std::invalid_argument);
}

TEST_CASE("classical representation check is the commutator equation") {
  GradedBasis b = examples::sl2_basis();
  BracketFamily f = examples::sl2_brackets();
  RepresentationFamily r = examples::sl2_rep();
  CHECK(check_representation(b, f, r).pass);

  // independent oracle on every generator pair
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Mat lhs = rep_eval(b, r, {i}) * rep_eval(b, r, {j}) -
                rep_eval(b, r, {j}) * rep_eval(b, r, {i});
      Mat rhs = zero_mat(2, 2);
      Vec br = bracket_eval(b, f, {i, j});
      for (int k = 0; k < 3; ++k)
        if (br(k) != 0) rhs += rep_eval(b, r, {k}) * br(k);
      CHECK(is_zero((lhs - rhs).eval()));
    }

  // corrupt one matrix entry: the pair equations must notice
  RepresentationFamily bad = r;
  bad.raw[2].matrix(0, 0) = Rat(2);
  REQUIRE(validate_representation(b, bad).empty());
  CHECK_FALSE(check_representation(b, f, bad).pass);

  // corrupt the brackets instead, keeping the representation
  BracketFamily fbad = f;
  fbad.raw[0].outputs[2] = Rat(2);  // [e,f] = 2h
  REQUIRE(validate_family(b, fbad).empty());
  CHECK_FALSE(check_representation(b, fbad, r).pass);
}

TEST_CASE("representation check: symmetric-group mode matches unshuffles") {
  GradedBasis b = examples::sl2_basis();
  BracketFamily f = examples::sl2_brackets();
  for (const RepresentationFamily& r :
       {examples::sl2_rep(), [] {
          // deliberately wrong action, the identity is still structural
          RepresentationFamily r = examples::sl2_rep();
          r.raw[0].matrix(1, 0) = Rat(7);
          GradedBasis b = examples::sl2_basis();
          REQUIRE(validate_representation(b, r).empty());
          return r;
        }()}) {
    for (int n = 1; n <= 4; ++n)
      for (const auto& M : enumerate_sorted_tuples(b, n)) {
        Mat plain = rep_structure_residual(b, f, r, M, false);
        Mat full = rep_structure_residual(b, f, r, M, true);
        CHECK(is_zero((plain - full).eval()));
      }
    CheckOptions full;
    full.full_mode = true;
    CHECK(check_representation(b, f, r, full).pass ==
          check_representation(b, f, r).pass);
  }
}

TEST_CASE("graded representation equations accept a matched action") {
  // one-dimensional module over the graded example: rho_1(x) = -1 on the
  // module reproduces l_2(x, -) acting on w and u; all other generators zero
  GradedBasis b = examples::graded_basis();
  BracketFamily f = examples::graded_brackets();
  RepresentationFamily r;
  r.skew = true;
  r.module_dim = 1;
  Mat m = zero_mat(1, 1);
  m(0, 0) = Rat(-1);
  r.raw = {{{0}, m}};
  REQUIRE(validate_representation(b, r).empty());
  // the n = 2 equations compare module commutators with l_2 insertions; a
  // 1-dimensional module makes the left side vanish, and the right side
  // vanishes because rho_1(l_2(x,x)) = 0 and higher rho are absent
  CHECK(check_representation(b, f, r).pass);
}

TEST_CASE("ordered representation check is left-module associativity") {
  GradedBasis b = examples::dual_basis();
  BracketFamily f = examples::dual_product();
  RepresentationFamily r = examples::dual_left_rep();
  CHECK(check_representation(b, f, r).pass);

  RepresentationFamily bad = r;
  bad.raw[1].matrix(0, 1) = Rat(1);
  REQUIRE(validate_representation(b, bad).empty());
  CHECK_FALSE(check_representation(b, f, bad).pass);
}

TEST_CASE("evaluation helpers expand linear combinations slot by slot") {
  GradedBasis b = examples::sl2_basis();
  BracketFamily f = examples::sl2_brackets();
  Vec mid = zero_vec(3);
  mid(0) = Rat(2);   // 2e
  mid(2) = Rat(-1);  // -h
  // [2e - h, f] = 2[e,f] - [h,f] = 2h + 2f
  Vec out = bracket_eval_insert(b, f, {}, mid, {1});
  CHECK(out(1) == Rat(2));
  CHECK(out(2) == Rat(2));
  CHECK(out(0) == Rat(0));

  RepresentationFamily r = examples::sl2_rep();
  Mat acc = rep_eval_insert(b, r, {}, mid, {});
  Mat expect = (rep_eval(b, r, {0}) * Rat(2) - rep_eval(b, r, {2})).eval();
  CHECK(is_zero((acc - expect).eval()));
}
