#include "doctest.h"
#include "ghostcalc/cochain.hpp"
#include "instances.hpp"
#include "random_families.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <vector>

using namespace ghostcalc;

namespace {

bool veq(const Vec& a, const Vec& b) { return is_zero(Vec(a - b)); }

Cochain random_cochain(const GradedBasis& b, std::mt19937& rng, int arity,
                       bool skew, int module_dim, int density_pct = 60) {
  Cochain c = make_cochain(arity, skew, module_dim);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> pct(0, 99);
  auto tuples = skew ? enumerate_sorted_tuples(b, arity)
                     : enumerate_ordered_tuples(b, arity);
  for (auto& t : tuples) {
    if (pct(rng) >= density_pct) continue;
    Vec v = zero_vec(module_dim);
    for (int i = 0; i < module_dim; ++i) v(i) = coef(rng);
    cochain_set(b, c, t, v);
  }
  return c;
}

Vec vec1(Rat a) {
  Vec v = zero_vec(1);
  v(0) = a;
  return v;
}

Vec vec2(Rat a, Rat b) {
  Vec v = zero_vec(2);
  v(0) = a;
  v(1) = b;
  return v;
}

const RepresentationFamily kNoRep{};

}  // namespace

TEST_CASE("skew storage applies the exchange sign") {
  GradedBasis b = examples::graded_basis();
  std::mt19937 rng(401);
  for (int trial = 0; trial < 60; ++trial) {
    Cochain c = make_cochain(3, true, 2);
    std::uniform_int_distribution<int> gen(0, b.dim() - 1);
    std::vector<int> t = {gen(rng), gen(rng), gen(rng)};
    SortedWord s = sort_with_sign(b, t);
    Vec v = vec2(Rat(3), Rat(-1, 2));
    if (s.zero) {
      CHECK_THROWS_AS(cochain_set(b, c, t, v), std::invalid_argument);
      cochain_set(b, c, t, zero_vec(2));  // zero value is fine
      CHECK(cochain_is_zero(c));
      continue;
    }
    cochain_set(b, c, t, v);
    // evaluating on any reordering picks up the relative ring sign
    std::vector<int> u = t;
    std::shuffle(u.begin(), u.end(), rng);
    Vec got = cochain_eval(b, c, u);
    SortedWord su = sort_with_sign(b, u);
    if (su.zero) {
      CHECK(is_zero(got));
    } else {
      const int rel = su.sign * s.sign;
      CHECK(veq(got, Vec(v * Rat(rel))));
    }
  }
  Cochain c = make_cochain(2, true, 1);
  CHECK_THROWS_AS(cochain_eval(b, c, {0}), std::invalid_argument);
  CHECK_THROWS_AS(cochain_set(b, c, {0, 9}, vec1(Rat(1))),
                  std::invalid_argument);
}

TEST_CASE("ordered storage is literal") {
  GradedBasis b = examples::dual_basis();
  Cochain c = make_cochain(2, false, 1);
  cochain_set(b, c, {0, 1}, vec1(Rat(5)));
  CHECK(cochain_eval(b, c, {0, 1})(0) == Rat(5));
  CHECK(cochain_eval(b, c, {1, 0})(0) == Rat(0));
}

TEST_CASE("ghost transport is a bijection on arity-homogeneous elements") {
  GradedBasis b = examples::graded_basis();
  std::mt19937 rng(409);
  for (int arity = 0; arity <= 3; ++arity) {
    for (int md : {1, 2}) {
      for (int trial = 0; trial < 10; ++trial) {
        Cochain c = random_cochain(b, rng, arity, true, md);
        Cochain back = from_ghost(b, to_ghost(b, c), arity);
        CHECK(cochain_is_zero(cochain_sub(back, c)));
      }
    }
  }

  // coefficient pins: n!/mult! on distinct and repeated tuples
  Cochain c = make_cochain(2, true, 1);
  cochain_set(b, c, {0, 1}, vec1(Rat(5)));   // distinct: weight 2!
  cochain_set(b, c, {3, 3}, vec1(Rat(7)));   // repeated square-surviving: 2!/2!
  GhostVecPoly g = to_ghost(b, c);
  auto at = [&](const std::vector<int>& w) {
    SignedMonomial sm = mono_from_word(b, w);
    auto it = g.terms.find(sm.mono);
    return it == g.terms.end() ? Rat(0) : Rat(it->second(0));
  };
  CHECK(at({0, 1}) == Rat(10));
  CHECK(at({3, 3}) == Rat(7));

  // mixed word lengths cannot come back as one cochain
  GhostVecPoly bad = vpoly_zero(1);
  bad.add_term(mono_unit(), vec1(Rat(1)));
  bad.add_term(mono_from_word(b, {0}).mono, vec1(Rat(1)));
  CHECK_THROWS_AS(from_ghost(b, bad, 0), std::invalid_argument);
}

TEST_CASE("classical differential: hand values") {
  GradedBasis hb = examples::heisenberg_basis();
  BracketFamily hf = examples::heisenberg_brackets();
  Cochain phi_z = make_cochain(1, true, 1);
  cochain_set(hb, phi_z, {2}, vec1(Rat(1)));
  Cochain d = ce_differential(hb, hf, kNoRep, phi_z);
  CHECK(cochain_eval(hb, d, {0, 1})(0) == Rat(-1));
  CHECK(cochain_eval(hb, d, {0, 2})(0) == Rat(0));
  CHECK(cochain_eval(hb, d, {1, 2})(0) == Rat(0));

  GradedBasis sb = examples::sl2_basis();
  BracketFamily sf = examples::sl2_brackets();
  RepresentationFamily sr = examples::sl2_rep();
  Cochain v0 = make_cochain(0, true, 2);
  cochain_set(sb, v0, {}, vec2(Rat(1), Rat(0)));
  Cochain dv = ce_differential(sb, sf, sr, v0);
  CHECK(veq(cochain_eval(sb, dv, {0}), vec2(Rat(0), Rat(0))));
  CHECK(veq(cochain_eval(sb, dv, {1}), vec2(Rat(0), Rat(1))));
  CHECK(veq(cochain_eval(sb, dv, {2}), vec2(Rat(1), Rat(0))));

  Cochain w = make_cochain(1, true, 2);
  cochain_set(sb, w, {0}, vec2(Rat(1), Rat(0)));
  Cochain dw = ce_differential(sb, sf, sr, w);
  CHECK(veq(cochain_eval(sb, dw, {0, 1}), vec2(Rat(0), Rat(-1))));
  CHECK(veq(cochain_eval(sb, dw, {0, 2}), vec2(Rat(1), Rat(0))));
  CHECK(veq(cochain_eval(sb, dw, {1, 2}), vec2(Rat(0), Rat(0))));

  // odd ghost parity required
  GradedBasis gb = examples::graded_basis();
  Cochain gc = make_cochain(1, true, 1);
  CHECK_THROWS_AS(ce_differential(gb, examples::graded_brackets(), kNoRep, gc),
                  std::invalid_argument);
}

TEST_CASE("k=2 component is the classical differential over n+1") {
  std::mt19937 rng(419);
  GradedBasis hb = examples::heisenberg_basis();
  BracketFamily hf = examples::heisenberg_brackets();
  GradedBasis sb = examples::sl2_basis();
  BracketFamily sf = examples::sl2_brackets();
  RepresentationFamily sr = examples::sl2_rep();
  for (int n = 0; n <= 3; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      Cochain ch = random_cochain(hb, rng, n, true, 1);
      Cochain lhs = cl_differential_component(hb, hf, kNoRep, ch, 2);
      Cochain rhs =
          cochain_scale(ce_differential(hb, hf, kNoRep, ch), Rat(1, n + 1));
      CHECK(cochain_is_zero(cochain_sub(lhs, rhs)));

      Cochain cs = random_cochain(sb, rng, n, true, 2);
      Cochain lhs2 = cl_differential_component(sb, sf, sr, cs, 2);
      Cochain rhs2 =
          cochain_scale(ce_differential(sb, sf, sr, cs), Rat(1, n + 1));
      CHECK(cochain_is_zero(cochain_sub(lhs2, rhs2)));
    }
  }
}

TEST_CASE("unshuffle and symmetric-group modes of the component agree") {
  std::mt19937 rng(421);
  GradedBasis gb = examples::graded_basis();
  BracketFamily gf = examples::graded_brackets();
  GradedBasis sb = examples::sl2_basis();
  BracketFamily sf = examples::sl2_brackets();
  RepresentationFamily sr = examples::sl2_rep();
  for (int k = 1; k <= 3; ++k) {
    for (int n = 0; n <= 2; ++n) {
      for (int trial = 0; trial < 3; ++trial) {
        Cochain cg = random_cochain(gb, rng, n, true, 1);
        CHECK(cochain_is_zero(cochain_sub(
            cl_differential_component(gb, gf, kNoRep, cg, k, false),
            cl_differential_component(gb, gf, kNoRep, cg, k, true))));

        Cochain cs = random_cochain(sb, rng, n, true, 2);
        CHECK(cochain_is_zero(cochain_sub(
            cl_differential_component(sb, sf, sr, cs, k, false),
            cl_differential_component(sb, sf, sr, cs, k, true))));
      }
    }
  }

  // the identity is structural: it holds for families that do not satisfy
  // the structure equations
  GradedBasis b4{{{"x", 0}, {"y", 0}, {"w", 1}, {"u", 2}},
                 Convention::GhostParity};
  for (int trial = 0; trial < 6; ++trial) {
    BracketFamily f = testrand::random_family(b4, rng, 3, 50);
    for (int k = 1; k <= 3; ++k) {
      Cochain c = random_cochain(b4, rng, 1, true, 1);
      CHECK(cochain_is_zero(cochain_sub(
          cl_differential_component(b4, f, kNoRep, c, k, false),
          cl_differential_component(b4, f, kNoRep, c, k, true))));
    }
  }
}

TEST_CASE("classical differential squares to zero") {
  std::mt19937 rng(431);
  GradedBasis hb = examples::heisenberg_basis();
  BracketFamily hf = examples::heisenberg_brackets();
  GradedBasis sb = examples::sl2_basis();
  BracketFamily sf = examples::sl2_brackets();
  RepresentationFamily sr = examples::sl2_rep();
  GradedBasis ab = examples::abelian_basis(4);
  BracketFamily af = examples::abelian_brackets(ab);
  for (int n = 0; n <= 3; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      Cochain ch = random_cochain(hb, rng, n, true, 1);
      CHECK(cochain_is_zero(
          ce_differential(hb, hf, kNoRep, ce_differential(hb, hf, kNoRep, ch))));
      Cochain ca = random_cochain(ab, rng, n, true, 1);
      CHECK(cochain_is_zero(
          ce_differential(ab, af, kNoRep, ce_differential(ab, af, kNoRep, ca))));
      if (n <= 2) {
        Cochain cs = random_cochain(sb, rng, n, true, 2);
        CHECK(cochain_is_zero(
            ce_differential(sb, sf, sr, ce_differential(sb, sf, sr, cs))));
      }
    }
  }
}

TEST_CASE("one-sided bar differential squares to zero and matches the "
          "ordered k=2 component") {
  std::mt19937 rng(433);
  struct Case {
    GradedBasis b;
    BracketFamily f;
  };
  std::vector<Case> cases = {{examples::dual_basis(), examples::dual_product()},
                             {examples::ut2_basis(), examples::ut2_product()}};
  for (auto& [b, f] : cases) {
    RepresentationFamily reg = examples::left_regular_rep(b, f);
    for (int n = 0; n <= 3; ++n) {
      for (int trial = 0; trial < 4; ++trial) {
        Cochain c1 = random_cochain(b, rng, n, false, 1);
        Cochain d1 = hochschild_differential(b, f, kNoRep, c1);
        CHECK(cochain_is_zero(hochschild_differential(b, f, kNoRep, d1)));
        CHECK(cochain_is_zero(
            cochain_sub(d1, ga_differential_component(b, f, kNoRep, c1, 2))));

        Cochain cm = random_cochain(b, rng, n, false, b.dim());
        Cochain dm = hochschild_differential(b, f, reg, cm);
        CHECK(cochain_is_zero(hochschild_differential(b, f, reg, dm)));
        CHECK(cochain_is_zero(
            cochain_sub(dm, ga_differential_component(b, f, reg, cm, 2))));
      }
    }
  }

  // the left regular action of the dual numbers is the pinned one
  RepresentationFamily reg = examples::left_regular_rep(
      examples::dual_basis(), examples::dual_product());
  RepresentationFamily pinned = examples::dual_left_rep();
  REQUIRE(reg.table.size() == pinned.table.size());
  for (auto& [t, m] : pinned.table)
    CHECK(is_zero((reg.table.at(t) - m).eval()));

  // non-associative products are refused with the failing triple named
  GradedBasis nb{{{"p", 0}, {"q", 0}}, Convention::GhostParity};
  BracketFamily nf;
  nf.skew = false;
  nf.raw = {{{0, 0}, {{0, Rat(1)}}},
            {{0, 1}, {{1, Rat(1)}}},
            {{1, 0}, {{0, Rat(1)}}}};
  REQUIRE(validate_family(nb, nf).empty());
  CHECK(associativity_witness(nb, nf) == "(q,p,q)");
  Cochain c = make_cochain(1, false, 1);
  CHECK_THROWS_AS(hochschild_differential(nb, nf, kNoRep, c),
                  std::domain_error);
}

TEST_CASE("unary ordered component squares to zero on a differential chain") {
  GradedBasis b{{{"a", 1}, {"b", 0}}, Convention::GhostParity};
  BracketFamily f;
  f.skew = false;
  f.raw = {{{0}, {{1, Rat(1)}}}};  // m_1(a) = b
  REQUIRE(validate_family(b, f).empty());
  std::mt19937 rng(439);
  for (int n = 1; n <= 4; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      Cochain c = random_cochain(b, rng, n, false, 1);
      Cochain d = ga_differential_component(b, f, kNoRep, c, 1);
      CHECK(cochain_is_zero(ga_differential_component(b, f, kNoRep, d, 1)));
    }
  }
}

TEST_CASE("ghost route equals tensor route") {
  std::mt19937 rng(443);
  GradedBasis hb = examples::heisenberg_basis();
  BracketFamily hf = examples::heisenberg_brackets();
  GradedBasis sb = examples::sl2_basis();
  BracketFamily sf = examples::sl2_brackets();
  RepresentationFamily sr = examples::sl2_rep();
  GradedBasis gb = examples::graded_basis();
  BracketFamily gf = examples::graded_brackets();

  for (int n = 0; n <= 3; ++n) {
    // every basis cochain, then randoms
    for (const auto& M : enumerate_sorted_tuples(hb, n)) {
      Cochain c = make_cochain(n, true, 1);
      cochain_set(hb, c, M, vec1(Rat(1)));
      CheckReport r = correspondence_check(hb, hf, kNoRep, c);
      CAPTURE(tuple_names(hb, M));
      CHECK(r.pass);
    }
    for (int trial = 0; trial < 4; ++trial) {
      CHECK(correspondence_check(hb, hf, kNoRep,
                                 random_cochain(hb, rng, n, true, 1))
                .pass);
      if (n <= 2) {
        CHECK(correspondence_check(sb, sf, sr,
                                   random_cochain(sb, rng, n, true, 2))
                  .pass);
        CHECK(correspondence_check(gb, gf, kNoRep,
                                   random_cochain(gb, rng, n, true, 1))
                  .pass);
      }
    }
  }

  // the comparison also holds against the symmetric-group tensor route
  for (int trial = 0; trial < 3; ++trial) {
    CHECK(correspondence_check(sb, sf, sr, random_cochain(sb, rng, 1, true, 2),
                               true)
              .pass);
    CHECK(correspondence_check(gb, gf, kNoRep,
                               random_cochain(gb, rng, 1, true, 1), true)
              .pass);
  }

  // module-valued cochain without an action is rejected
  CHECK_THROWS_AS(
      correspondence_check(hb, hf, kNoRep, random_cochain(hb, rng, 1, true, 2)),
      std::invalid_argument);
}

TEST_CASE("monomial bases of the graded pieces") {
  GradedBasis gb = examples::graded_basis();
  CHECK(monomials_of_degree(gb, 0).size() == 1);
  CHECK(monomials_of_degree(gb, 1).size() == 3);   // x, y, z
  CHECK(monomials_of_degree(gb, 2).size() == 4);   // pairs + w
  CHECK(monomials_of_degree(gb, 3).size() == 5);   // xyz, {x,y,z}w, u
  GradedBasis ab = examples::abelian_basis(4);
  const int binom[6] = {1, 4, 6, 4, 1, 0};
  for (int nn = 0; nn <= 5; ++nn)
    CHECK(static_cast<int>(monomials_of_degree(ab, nn).size()) == binom[nn]);
}

TEST_CASE("graded complex maps compose to zero on nilpotent instances") {
  for (const testrand::Seed& s : testrand::nilpotent_seeds()) {
    CAPTURE(s.name);
    OddDerivation d = s.rep.module_dim > 0
                          ? make_derivation(s.basis, s.brackets, s.rep)
                          : make_derivation(s.basis, s.brackets);
    GradedComplex gc = build_graded_complex(d, 3);
    for (int N = 0; N + 1 < static_cast<int>(gc.maps.size()); ++N) {
      Mat comp = gc.maps[static_cast<std::size_t>(N) + 1] *
                 gc.maps[static_cast<std::size_t>(N)];
      CHECK(is_zero(comp));
    }
  }
  GradedBasis gb = examples::graded_basis();
  OddDerivation d = make_derivation(gb, examples::graded_brackets());
  GradedComplex gc = build_graded_complex(d, 4);
  for (int N = 0; N + 1 < static_cast<int>(gc.maps.size()); ++N)
    CHECK(is_zero(Mat(gc.maps[static_cast<std::size_t>(N) + 1] *
                      gc.maps[static_cast<std::size_t>(N)])));
}

TEST_CASE("cohomology dimensions: known answers") {
  GradedBasis ab = examples::abelian_basis(4);
  OddDerivation da = make_derivation(ab, examples::abelian_brackets(ab));
  CohomologyReport ra = cohomology_dims(da, 4);
  CHECK(ra.nilpotent);
  CHECK(ra.space_dims == std::vector<int>{1, 4, 6, 4, 1});
  CHECK(ra.h_dims == std::vector<int>{1, 4, 6, 4, 1});

  OddDerivation ds =
      make_derivation(examples::sl2_basis(), examples::sl2_brackets());
  CohomologyReport rs = cohomology_dims(ds, 3);
  CHECK(rs.nilpotent);
  CHECK(rs.h_dims == std::vector<int>{1, 0, 0, 1});

  OddDerivation dh = make_derivation(examples::heisenberg_basis(),
                                     examples::heisenberg_brackets());
  CohomologyReport rh = cohomology_dims(dh, 3);
  CHECK(rh.nilpotent);
  CHECK(rh.h_dims == std::vector<int>{1, 2, 2, 1});

  // coefficients in the defining representation kill everything
  OddDerivation dm = make_derivation(examples::sl2_basis(),
                                     examples::sl2_brackets(),
                                     examples::sl2_rep());
  CohomologyReport rm = cohomology_dims(dm, 3);
  CHECK(rm.nilpotent);
  CHECK(rm.space_dims == std::vector<int>{2, 6, 6, 2});
  CHECK(rm.h_dims == std::vector<int>{0, 0, 0, 0});

  // the graded instance: unit survives in degree zero
  OddDerivation dg = make_derivation(examples::graded_basis(),
                                     examples::graded_brackets());
  CohomologyReport rg = cohomology_dims(dg, 3);
  CHECK(rg.nilpotent);
  CHECK(rg.h_dims[0] == 1);
}

TEST_CASE("cohomology refuses what it cannot grade or trust") {
  // a broken family reports the square witness instead of dimensions
  GradedBasis sb = examples::sl2_basis();
  BracketFamily bad;
  bad.skew = true;
  bad.raw = {{{0, 1}, {{2, Rat(1)}}},
             {{2, 0}, {{0, Rat(3)}}},
             {{2, 1}, {{1, Rat(-2)}}}};
  REQUIRE(validate_family(sb, bad).empty());
  CohomologyReport r = cohomology_dims(make_derivation(sb, bad), 3);
  CHECK_FALSE(r.nilpotent);
  CHECK(!r.witness.empty());
  CHECK(r.h_dims.empty());
  CHECK(r.space_dims.size() == 4);

  // an action on a positive-degree generator has no compatible grading
  GradedBasis gb = examples::graded_basis();
  RepresentationFamily rw;
  rw.skew = true;
  rw.module_dim = 2;
  rw.raw = {{{3}, examples::mat2(0, 1, 0, 0)}};
  REQUIRE(validate_representation(gb, rw).empty());
  OddDerivation dw = make_derivation(gb, examples::graded_brackets(), rw);
  CHECK_THROWS_AS(cohomology_dims(dw, 2), std::domain_error);
}
