#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "eqloc/multiplicity.hpp"

using namespace eqloc;

namespace {

Fan load(const std::string& name) {
  std::ifstream in(std::string(EQLOC_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fan(ss.str());
}

Character C(std::initializer_list<std::int64_t> v) { return Character(IntVec(v)); }

// num / prod (1 - e^{x}) for the given exponents x.
LocalizedClass over(const char* num, std::vector<Character> exps) {
  std::vector<Character> weights;
  for (const auto& x : exps) weights.push_back(-x);
  return LocalizedClass(parse_laurent(num, exps.empty() ? 2 : exps.front().rank()), weights);
}

// Brute-force Hilbert series check: sum e^m over sigma-dual points of grade
// <= bound (grade = pairing with the sum of the rays), times the denominator
// of em, must agree with the numerator of em wherever truncation cannot
// interfere.
bool hilbert_window_agrees(const IntMat& rays, const LocalizedClass& em) {
  const std::size_t n = rays.size();
  IntVec g(n, 0);
  for (const auto& v : rays) g = add(g, v);
  auto grade = [&](const Character& m) { return m.pair(g); };

  const LaurentPoly den = em.denominator_poly();
  std::int64_t den_min = 0, num_max = 0;
  for (const auto& [m, c] : den.terms()) den_min = std::min(den_min, grade(m));
  for (const auto& [m, c] : em.numerator().terms()) num_max = std::max(num_max, grade(m));
  const std::int64_t bound = num_max - den_min + 4;

  // sigma-dual points of grade <= bound have |coords| <= bound * max|row of inverse|.
  Integer det;
  const IntMat dual = scaled_dual_basis(rays, det);
  std::int64_t box = 0;
  for (const auto& row : dual)
    for (auto x : row) box = std::max(box, std::abs(x));
  box = bound * box;

  LaurentPoly window(n);
  IntVec m(n, -box);
  for (;;) {
    bool inside = true;
    for (const auto& v : rays) inside = inside && dot(m, v) >= 0;
    if (inside && dot(m, g) <= bound) window.add_term(Character(m), 1);
    std::size_t j = 0;
    while (j < n && m[j] == box) m[j++] = -box;
    if (j == n) break;
    ++m[j];
  }
  const LaurentPoly lhs = window * den;
  const std::int64_t cutoff = bound + den_min;
  for (const auto& [mono, c] : lhs.terms())
    if (grade(mono) <= cutoff && em.numerator().coefficient(mono) != c) return false;
  for (const auto& [mono, c] : em.numerator().terms())
    if (grade(mono) <= cutoff && lhs.coefficient(mono) != c) return false;
  return cutoff >= num_max;
}

IntMat random_simplicial_cone(std::mt19937& rng, std::size_t n, int max_mult) {
  std::uniform_int_distribution<int> coord(-3, 3);
  for (;;) {
    IntMat rays(n, IntVec(n));
    bool ok = true;
    for (auto& r : rays) {
      for (auto& x : r) x = coord(rng);
      ok = ok && is_primitive(r);
    }
    if (!ok) continue;
    const Integer d = abs(determinant(rays));
    if (d == 0 || d > max_mult) continue;
    return rays;
  }
}

}  // namespace

TEST_CASE("P(1,1,2) multiplicity table") {
  const Fan f = load("p112.fan");
  const auto em = em_table(f);
  REQUIRE(em.size() == 3);
  CHECK(em[0] == over("1", {C({1, 0}), C({0, 1})}));
  CHECK(em[1] == over("1 + e^{u1-u2}", {C({2, -1}), C({0, -1})}));
  CHECK(em[2] == over("1", {C({-1, 0}), C({-2, 1})}));

  const auto d = em_orbit_closure(f, Cone{{2}});
  CHECK(d[0].is_zero());
  CHECK(d[1] == over("1", {C({2, -1})}));
  CHECK(d[2] == over("1", {C({-2, 1})}));

  const auto p = em_orbit_closure(f, f.maximal()[1]);
  CHECK(p[0].is_zero());
  CHECK(p[1] == LocalizedClass::one(2));
  CHECK(p[2].is_zero());

  const auto x = em_orbit_closure(f, Cone{});
  for (std::size_t k = 0; k < 3; ++k) CHECK(x[k] == em[k]);

  LocalizedClass sum(2);
  for (const auto& e : em) sum += e;
  CHECK(sum == LocalizedClass::one(2));

  CHECK(to_string(em[1]) == "(1 + e^{u1-u2}) / ((1-e^{2*u1-u2})(1-e^{-u2}))");
}

TEST_CASE("smooth multiplicities") {
  CHECK(em_smooth(std::vector<Character>{}, 0) == LocalizedClass::one(0));
  CHECK_THROWS(em_smooth(std::vector{C({0, 0})}, 2));
  const Fan f = load("p2.fan");
  for (std::size_t k = 0; k < 3; ++k) CHECK(em_point(f, k) == em_smooth(tangent_weights(f, f.maximal()[k]), 2));
}

TEST_CASE("cone of multiplicity three") {
  const IntMat rays{{1, 0}, {1, 3}};
  const auto em = em_cone(rays);
  CHECK(em == em_hilbert(rays));
  CHECK(hilbert_window_agrees(rays, em));
  CHECK(em == em_cone(rays, PivotPolicy::FirstCone));
}

TEST_CASE("resolution sums match Hilbert series on random simplicial cones") {
  std::mt19937 rng(2024);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < (n == 2 ? 40 : 15); ++trial) {
      const IntMat rays = random_simplicial_cone(rng, n, 8);
      CAPTURE(rays);
      const auto a = em_cone(rays, PivotPolicy::WorstCone);
      CHECK_FALSE(a.is_zero());
      CHECK(a == em_cone(rays, PivotPolicy::FirstCone));
      CHECK(a == em_hilbert(rays));
      CHECK(hilbert_window_agrees(rays, a));
    }
  }
}

TEST_CASE("Chow multiplicities") {
  const std::vector<Character> lam{C({1, 2}), C({-1, 1})};
  const auto a = em_chow(em_smooth(lam, 2));
  CHECK(a == ChowFraction{Polynomial::constant(2, 1), lam});
  CHECK(a.degree() == -2);

  const Fan f = load("p112.fan");
  const auto sing = em_chow(em_point(f, 1));
  CHECK(sing == ChowFraction{Polynomial::constant(2, 2), {C({2, -1}), C({0, -1})}});
  CHECK(sing == em_chow_volume(f.ray_vectors(f.maximal()[1])));

  CHECK(em_chow(LocalizedClass::one(0)) == ChowFraction{Polynomial::constant(0, 1), {}});

  const Fan cube = load("cube.fan");
  for (std::size_t k = 0; k < cube.maximal().size(); ++k)
    CHECK(em_chow(em_point(cube, k)) == em_chow_volume(cube.ray_vectors(cube.maximal()[k])));
}

TEST_CASE("cube fan completeness sum") {
  const Fan cube = load("cube.fan");
  LocalizedClass sum(3);
  for (const auto& e : em_table(cube)) sum += e;
  CHECK(sum == LocalizedClass::one(3));
}
