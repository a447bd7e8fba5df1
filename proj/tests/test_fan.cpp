#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "eqloc/fan.hpp"

using namespace eqloc;

namespace {

Fan load(const std::string& name) {
  std::ifstream in(std::string(EQLOC_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_fan(ss.str());
}

FanError::Kind parse_error(const char* text) {
  try {
    parse_fan(text);
  } catch (const FanError& e) {
    return e.kind();
  }
  FAIL("expected a FanError");
  return FanError::Kind::Syntax;
}

Character C(std::initializer_list<std::int64_t> v) { return Character(IntVec(v)); }

}  // namespace

TEST_CASE("parse and validate the P(1,1,2) fan") {
  const Fan f = load("p112.fan");
  CHECK(f.rank() == 2);
  CHECK(f.maximal().size() == 3);
  CHECK(f.is_complete());
  CHECK(f.cones().size() == 7);
  CHECK(is_smooth(f, f.maximal()[0]));
  CHECK(multiplicity(f, f.maximal()[0]) == 1);
  CHECK(is_simplicial(f, f.maximal()[1]));
  CHECK_FALSE(is_smooth(f, f.maximal()[1]));
  CHECK(multiplicity(f, f.maximal()[1]) == 2);
  CHECK(parse_fan(write_fan(f)).maximal() == f.maximal());
}

TEST_CASE("rank one and the cube") {
  const Fan p1 = load("p1.fan");
  CHECK(p1.is_complete());
  const auto w = walls(p1);
  REQUIRE(w.size() == 1);
  CHECK(w[0].weight == C({1}));

  const Fan cube = load("cube.fan");
  CHECK(cube.is_complete());
  CHECK(cube.maximal().size() == 6);
  for (const auto& c : cube.maximal()) CHECK_FALSE(is_simplicial(cube, c));
  CHECK_THROWS_AS(multiplicity(cube, cube.maximal()[0]), FanError);
}

TEST_CASE("validation diagnostics") {
  CHECK(parse_error("rank 2\nray 2 0\nray 0 1\ncone 0 1\n") == FanError::Kind::NonPrimitiveRay);
  CHECK(parse_error("rank 2\nray 1 0\nray 0 1 1\n") == FanError::Kind::RankMismatch);
  CHECK(parse_error("rank 1\nray 1\nray -1\ncone 0 1\n") == FanError::Kind::NonPointedCone);
  CHECK(parse_error("rank 2\nray 1 0\nray 0 1\nray 1 1\ncone 0 1\ncone 0 2\n") == FanError::Kind::OverlappingCones);
  CHECK(parse_error("rank 2\nray 1 0\nray 0 1\nray 1 1\ncone 0 2 1\n") == FanError::Kind::RedundantGenerator);
  CHECK(parse_error("rank 2\nray 1 0\ncone 0 3\n") == FanError::Kind::BadRayIndex);
  CHECK(parse_error("rank 2\nbogus 1\n") == FanError::Kind::Syntax);
  CHECK(parse_error("ray 1 0\n") == FanError::Kind::Syntax);
  // Two cones crossing without sharing rays.
  CHECK(parse_error("rank 2\nray 1 0\nray 0 1\nray 1 -1\nray 1 2\ncone 0 1\ncone 2 3\n") ==
        FanError::Kind::OverlappingCones);
  // Overlap in rank 3 where shared rays form a face but the cones still cross.
  CHECK(parse_error("rank 3\nray 1 0 0\nray 0 1 0\nray 0 0 1\nray 1 1 -1\nray -1 0 1\n"
                    "cone 0 1 2\ncone 0 3 4\n") == FanError::Kind::OverlappingCones);
}

TEST_CASE("incomplete fans") {
  const Fan f = parse_fan("rank 2\nray 1 0\nray 0 1\ncone 0 1\n");
  CHECK_FALSE(f.is_complete());
  CHECK_THROWS_AS(walls(f), FanError);
  CHECK_THROWS_AS(lattice_points(f, {0, 0}), FanError);
}

TEST_CASE("dual generators") {
  const Fan f = load("p112.fan");
  CHECK(dual_generators(f, f.maximal()[0]) == std::vector{C({1, 0}), C({0, 1})});
  // <e2, -e1-2e2>: pairing matrix with the rays is the identity.
  const auto m = dual_generators(f, f.maximal()[2]);
  const IntMat v = f.ray_vectors(f.maximal()[2]);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) CHECK(m[i].pair(v[j]) == (i == j ? 1 : 0));
  CHECK(m == std::vector{C({-2, 1}), C({-1, 0})});
  CHECK_THROWS_AS(dual_generators(f, f.maximal()[1]), FanError);

  const Fan p1 = load("p1.fan");
  CHECK(dual_generators(p1, p1.maximal()[0]) == std::vector{C({1})});
}

TEST_CASE("walls") {
  const Fan f = load("p112.fan");
  const auto w = walls(f);
  REQUIRE(w.size() == 3);
  std::set<Character> weights;
  for (const auto& x : w) {
    weights.insert(x.weight);
    for (const auto& r : f.ray_vectors(x.facet)) CHECK(x.weight.pair(r) == 0);
  }
  CHECK(weights == std::set{C({0, 1}), C({1, 0}), C({2, -1})});
  CHECK(walls(load("p1xp1.fan")).size() == 4);
}

TEST_CASE("resolution") {
  const Fan f = load("p112.fan");
  for (auto policy : {PivotPolicy::WorstCone, PivotPolicy::FirstCone}) {
    const auto r = resolve(f, policy);
    CHECK(r.fan.rays().size() == 4);
    CHECK(r.fan.ray(3) == IntVec{0, -1});
    CHECK(r.fan.is_complete());
    int over_singular = 0;
    for (std::size_t k = 0; k < r.fan.maximal().size(); ++k) {
      CHECK(is_smooth(r.fan, r.fan.maximal()[k]));
      if (r.parent[k] == 1) ++over_singular;
    }
    CHECK(over_singular == 2);
  }

  const Fan smooth = load("p2.fan");
  CHECK(resolve(smooth).fan.maximal() == smooth.maximal());

  const Fan c = parse_fan("rank 2\nray 1 0\nray 1 3\ncone 0 1\n");
  CHECK(multiplicity(c, c.maximal()[0]) == 3);
  const auto r = resolve(c);
  CHECK(r.fan.rays().size() == 4);
  CHECK(r.fan.maximal().size() == 3);
  for (const auto& k : r.fan.maximal()) CHECK(multiplicity(r.fan, k) == 1);
}

TEST_CASE("parallelepiped points") {
  const auto pts = parallelepiped_points({{1, 0}, {1, 3}});
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].point == IntVec{1, 1});
  CHECK(pts[1].point == IntVec{1, 2});
  CHECK(parallelepiped_points({{1, 0}, {-1, -2}}).size() == 1);
  CHECK(parallelepiped_points({{1, 0}, {0, 1}}).empty());
}

TEST_CASE("triangulation") {
  const Fan cube = load("cube.fan");
  const auto t = stellar_triangulate(cube);
  CHECK(t.fan.maximal().size() == 12);
  CHECK(t.fan.is_complete());
  for (const auto& c : t.fan.maximal()) CHECK(is_simplicial(t.fan, c));

  const Fan square = parse_fan("rank 3\nray 1 0 0\nray 0 1 0\nray 1 0 1\nray 0 1 1\ncone 0 1 2 3\n");
  CHECK(stellar_triangulate(square).fan.maximal().size() == 2);

  const Fan p2 = load("p2.fan");
  CHECK(stellar_triangulate(p2).fan.maximal() == p2.maximal());
}

TEST_CASE("divisor polytopes") {
  const Fan p1 = load("p1.fan");
  auto pts = lattice_points(p1, p1.divisor("d2").coefficients);
  REQUIRE(pts.size() == 3);
  CHECK(pts[0] == C({0}));
  CHECK(pts[2] == C({2}));
  CHECK(divisor_vertex(p1, p1.divisor("d2").coefficients, 0) == C({0}));
  CHECK(divisor_vertex(p1, p1.divisor("d2").coefficients, 1) == C({2}));

  const Fan f = load("p112.fan");
  CHECK(lattice_points(f, {0, 0, 0}) == std::vector{C({0, 0})});
  for (std::size_t k = 0; k < 3; ++k) CHECK(divisor_vertex(f, {0, 0, 0}, k).is_zero());
  const IntVec ample = f.divisor("ample").coefficients;
  CHECK(is_nef(f, ample));
  // Triangle with vertices (0,0), (2,0), (0,1).
  CHECK(lattice_points(f, ample).size() == 4);
  CHECK_FALSE(is_cartier(f, f.divisor("d").coefficients));
  CHECK_THROWS_AS(divisor_vertex(f, f.divisor("d").coefficients, 1), FanError);

  const Fan cube = load("cube.fan");
  CHECK(is_nef(cube, cube.divisor("ample").coefficients));
  CHECK(lattice_points(cube, cube.divisor("ample").coefficients).size() == 7);
}

TEST_CASE("pullback to a resolution stays nef") {
  const Fan f = load("p112.fan");
  const auto r = resolve(f);
  const IntVec d = pullback_divisor(f, r, f.divisor("ample").coefficients);
  CHECK(is_nef(r.fan, d));
  CHECK(lattice_points(r.fan, d) == lattice_points(f, f.divisor("ample").coefficients));
}
