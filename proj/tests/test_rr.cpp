#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "eqloc/corpus.hpp"
#include "eqloc/rr.hpp"

using namespace eqloc;

namespace {

Fan load(const std::string& name) {
  std::ifstream in(std::string(EQLOC_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fan(ss.str());
}

Character ch(std::initializer_list<std::int64_t> v) { return Character(IntVec(v)); }

}  // namespace

TEST_CASE("Todd series of one weight") {
  const auto u = ch({1});
  const auto td = todd_smooth({u}, 2);
  Polynomial expected = Polynomial::constant(1, 1);
  expected.add_term({1}, Rational(1, 2));
  expected.add_term({2}, Rational(1, 12));
  CHECK(td == TruncatedSeries::from_polynomial(expected, 2));

  // Bernoulli numbers: x / (1 - e^{-x}) = sum B_k^+ x^k / k!.
  const std::vector<Rational> bernoulli{1, Rational(1, 2), Rational(1, 6), 0, Rational(-1, 30), 0, Rational(1, 42),
                                        0, Rational(-1, 30), 0, Rational(5, 66)};
  const auto td10 = todd_smooth({u}, 10);
  Integer factorial = 1;
  for (unsigned k = 0; k <= 10; ++k) {
    if (k > 0) factorial *= k;
    CHECK(td10.component(k).coefficient({static_cast<std::int64_t>(k)}) == bernoulli[k] / Rational(factorial));
  }

  // Unit property against (1 - e^{-x}) / x.
  std::vector<Rational> g(11);
  factorial = 1;
  for (unsigned k = 0; k <= 10; ++k) {
    factorial *= k + 1;
    g[k] = Rational(k % 2 ? -1 : 1) / Rational(factorial);
  }
  for (const auto& w : {ch({1, 0}), ch({2, -1}), ch({-1, 3})}) {
    const auto prod = todd_smooth({w}, 10) * TruncatedSeries::substitute(g, w, 10);
    CHECK(prod == TruncatedSeries::constant(2, 10, 1));
  }
  CHECK(todd_smooth({}, 4) == TruncatedSeries::constant(0, 4, 1));
  CHECK(todd_smooth({ch({1, 0}), ch({0, 1})}, 6) == todd_smooth({ch({1, 0})}, 6) * todd_smooth({ch({0, 1})}, 6));
  CHECK_THROWS(todd_smooth({ch({0, 0})}, 3));
}

TEST_CASE("Todd identity on P(1,1,2)") {
  const Fan f = load("p112.fan");
  for (std::size_t p = 0; p < 3; ++p) {
    const auto r = verify_todd_identity(f, p, 10);
    CAPTURE(r.label);
    CAPTURE(r.first_mismatch.value_or(""));
    CHECK(r.pass);
  }
  CHECK(em_chow(em_point(f, 1)) == ChowFraction{Polynomial::constant(2, 2), {ch({2, -1}), ch({0, -1})}});
  const Fan point(0, {}, {Cone{}});
  CHECK(verify_todd_identity(point, 0, 10).pass);
}

TEST_CASE("Adams-Riemann-Roch at fixed points") {
  const Fan f = load("p112.fan");
  for (unsigned j : {1u, 2u, 3u, 5u})
    for (std::size_t p = 0; p < 3; ++p) {
      const auto r = verify_adams_rr_point(f, p, j);
      CAPTURE(r.label);
      CHECK(r.pass);
    }
  // j = 2 on a smooth cone: theta = (1 + e^{m1})(1 + e^{m2}) with m the dual generators.
  const Fan p2 = load("p2.fan");
  const auto m = dual_generators(p2, p2.maximal()[0]);
  std::vector<WeightMultiplicity> w{{m[0], 1}, {m[1], 1}};
  LaurentPoly expected = LaurentPoly::constant(2, 1) + LaurentPoly::monomial(m[0]);
  expected *= LaurentPoly::constant(2, 1) + LaurentPoly::monomial(m[1]);
  CHECK(bott(2, w, 2) == LocalizedClass(expected));
  CHECK(verify_adams_rr_point(load("cube.fan"), 0, 2).pass);
}

TEST_CASE("GRR for the map to a point") {
  const Fan p1 = load("p1.fan");
  for (const auto& d : p1.divisors()) CHECK(verify_grr_pushforward(p1, d.coefficients, 6).pass);
  const Fan p1p1 = load("p1xp1.fan");
  const auto r = verify_grr_pushforward(p1p1, {0, 0, 1, 1}, 8);
  CAPTURE(r.first_mismatch.value_or(""));
  CHECK(r.pass);
  CHECK(verify_grr_pushforward(p1p1, {0, 0, 0, 0}, 8).pass);
  CHECK_THROWS_AS(verify_grr_pushforward(load("p112.fan"), {0, 0, 2}, 4), FanError);
}

TEST_CASE("GRR detects a wrong Euler characteristic") {
  // Comparing against a perturbed left side must fail: check via first_mismatch directly.
  const auto a = chern_character(parse_laurent("1 + e^{u1}", 1), 4);
  const auto b = chern_character(parse_laurent("1 + e^{2*u1}", 1), 4);
  CHECK(first_mismatch(a, b, 4).has_value());
  CHECK(!first_mismatch(a, a, 4).has_value());
}

TEST_CASE("ch commutes with Adams operations up to degree scaling") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    LaurentPoly f(2);
    for (int t = 0; t < 4; ++t) f.add_term(Character(IntVec{e(rng), e(rng)}), e(rng));
    for (unsigned j : {1u, 2u, 3u}) CHECK(verify_ch_adams(f, j, 6).pass);
  }
}
