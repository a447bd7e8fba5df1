#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "eqloc/corpus.hpp"
#include "eqloc/localize.hpp"

using namespace eqloc;

namespace {

Fan load(const std::string& name) {
  std::ifstream in(std::string(EQLOC_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fan(ss.str());
}

LaurentPoly lp(const std::string& s, std::size_t rank = 2) { return parse_laurent(s, rank); }

FixedPointTuple constant_tuple(const Fan& fan, std::int64_t c) {
  return FixedPointTuple(fan.maximal().size(), LaurentPoly::constant(fan.rank(), c));
}

}  // namespace

TEST_CASE("integration on P1") {
  const Fan p1 = load("p1.fan");
  CHECK(integrate(p1, constant_tuple(p1, 1)) == LaurentPoly::constant(1, 1));
  CHECK(integrate(p1, {lp("1", 1), lp("e^{2*u1}", 1)}) == lp("1 + e^{u1} + e^{2*u1}", 1));
  CHECK(euler_char(p1, p1.divisor("d2").coefficients) == lp("1 + e^{u1} + e^{2*u1}", 1));
  CHECK(euler_char(p1, p1.divisor("zero").coefficients) == LaurentPoly::constant(1, 1));
  CHECK_THROWS_AS(integrate(p1, {lp("1", 1), lp("0", 1)}), NonIntegralResult);
}

TEST_CASE("integration on P(1,1,2)") {
  const Fan f = load("p112.fan");
  const auto d_em = em_orbit_closure(f, Cone{{2}});
  CHECK(integrate(d_em, constant_tuple(f, 1)) == LaurentPoly::constant(2, 1));
  const auto ample = f.divisor("ample").coefficients;
  CHECK(euler_char(f, ample) == lattice_point_sum(f, ample));
  CHECK(lattice_points(f, ample).size() == 4);
}

TEST_CASE("Brion identity over the corpus") {
  const auto corpus = regression_corpus();
  CHECK(corpus.size() >= 20);
  for (const auto& e : corpus) {
    CAPTURE(e.name);
    CHECK(e.nef_divisors.size() >= 3);
    for (const auto& d : e.nef_divisors) {
      CAPTURE(d);
      REQUIRE(is_nef(e.fan, d));
      CHECK(euler_char(e.fan, d) == lattice_point_sum(e.fan, d));
    }
  }
}

TEST_CASE("tuple files") {
  const Fan f = load("p112.fan");
  const auto entries = parse_tuple("# comment\ncone 0: 1\ncone 1: e^{u1}\n2: 1 - e^{-u2}\n", Notation::standard(2));
  const auto t = tuple_for_fan(entries, f);
  CHECK(t[1] == lp("e^{u1}"));
  CHECK(t[2] == lp("1 - e^{-u2}"));
  CHECK_THROWS_AS(tuple_for_fan(parse_tuple("cone 0: 1\ncone 1: 1\n", Notation::standard(2)), f), TupleError);
  CHECK_THROWS_AS(parse_tuple("cone 0 1\n", Notation::standard(2)), TupleError);
}

TEST_CASE("GKM and piecewise-exponential checks") {
  const Fan p1p1 = load("p1xp1.fan");
  CHECK(gkm_check(p1p1, constant_tuple(p1p1, 3)).empty());
  CHECK(pexp_check(p1p1, constant_tuple(p1p1, 3)).empty());
  for (const auto& d : p1p1.divisors()) {
    CHECK(gkm_check(p1p1, divisor_tuple(p1p1, d.coefficients)).empty());
    CHECK(pexp_check(p1p1, divisor_tuple(p1p1, d.coefficients)).empty());
  }

  const Fan p1p1b = load("p1xp1.fan");
  const auto v = gkm_check(p1p1b, {lp("1"), lp("e^{u2}"), lp("e^{u2}"), lp("1")});
  REQUIRE(!v.empty());
  CHECK(!v[0].remainder.is_zero());

  const Fan cube = load("cube.fan");
  const auto ct = divisor_tuple(cube, cube.divisor("ample").coefficients);
  CHECK(pexp_check(cube, ct).empty());
  CHECK(integrate(cube, ct) == lattice_point_sum(cube, cube.divisor("ample").coefficients));
  auto broken = ct;
  broken[0] = broken[0] + lp("1", 3);
  CHECK(!pexp_check(cube, broken).empty());
  CHECK_THROWS_AS(PExpClass(cube, broken), TupleError);
}

TEST_CASE("walls-only pexp agrees with GKM on random smooth plane fans") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> exp(-2, 2), coin(0, 3);
  int tested = 0, rejected = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const Fan f = resolve(random_complete_fan_2d(rng)).fan;
    for (int sample = 0; sample < 5; ++sample) {
      // Start from a divisor tuple and perturb a few entries.
      IntVec a(f.rays().size());
      for (auto& x : a) x = exp(rng);
      FixedPointTuple t = divisor_tuple(f, a);
      for (auto& x : t)
        if (coin(rng) == 0) x += LaurentPoly::monomial(Character(IntVec{exp(rng), exp(rng)}), 1);
      const bool gkm = gkm_check(f, t).empty();
      CHECK(gkm == pexp_check(f, t, true).empty());
      CHECK(gkm == pexp_check(f, t).empty());
      ++tested;
      if (!gkm) ++rejected;
    }
  }
  CHECK(tested == 100);
  CHECK(rejected > 0);
  CHECK(rejected < tested);
}

TEST_CASE("Adams operations preserve piecewise exponentials") {
  const Fan f = load("p112.fan");
  const PExpClass o(f, divisor_tuple(f, f.divisor("ample").coefficients));
  for (unsigned j : {1u, 2u, 3u}) CHECK(adams_pullback_check(f, j, o).pass());
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> coeff(-2, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Fan g = resolve(random_complete_fan_2d(rng)).fan;
    IntVec a(g.rays().size()), b(g.rays().size());
    for (auto& x : a) x = coeff(rng);
    for (auto& x : b) x = coeff(rng);
    // An R(T)-combination of two line-bundle tuples.
    const auto ta = divisor_tuple(g, a);
    const auto tb = divisor_tuple(g, b);
    FixedPointTuple t;
    for (std::size_t p = 0; p < ta.size(); ++p) t.push_back(ta[p] * lp("2 - e^{u1}") + tb[p] * lp("e^{-u2}"));
    const PExpClass c(g, t);
    CHECK(adams_pullback_check(g, 3, c).pass());
  }
}

TEST_CASE("dual basis of P(1,1,2)") {
  const Fan f = load("p112.fan");
  const std::vector<Cone> basis{Cone{}, Cone{{2}}, f.maximal()[1]};
  const DualBasis db = dual_basis(f, basis);
  const std::vector<std::vector<std::string>> expected{
      {"(1 - e^{u1})*(1 - e^{u2})", "e^{u1} - e^{u1+u2}", "e^{u2}"},
      {"e^{u1} - e^{u1+u2}", "e^{-u1+u2} + e^{u1+u2} + e^{u2} - e^{u1}", "-e^{u2} - e^{-u1+u2}"},
      {"e^{u2}", "-e^{u2} - e^{-u1+u2}", "e^{-u1+u2}"}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(db.image[i][j] == lp(expected[i][j]));
    }
  // The displayed matrix has determinant -(e^{-u1+2*u2} + e^{u2}).
  CHECK(db.image_determinant == lp("-e^{-u1+2*u2} - e^{u2}"));

  for (std::size_t j = 0; j < 3; ++j) {
    const auto orbit = em_orbit_closure(f, basis[j]);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(pairing(orbit, db.dual[i]) == LocalizedClass(LaurentPoly::constant(2, i == j ? 1 : 0)));
  }
  CHECK_THROWS_AS(dual_basis(f, {Cone{}, Cone{}, f.maximal()[1]}), SingularPairing);
}

TEST_CASE("Laurent determinant") {
  CHECK(determinant({{lp("e^{u1}"), lp("1")}, {lp("1"), lp("e^{-u1}")}}).is_zero());
}
