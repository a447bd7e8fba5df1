#include <doctest.h>

#include <random>

#include "eqloc/spherical.hpp"

using namespace eqloc;

namespace {

LaurentPoly t(const std::string& s) { return parse_laurent(s, surface_notation()); }

std::vector<SurfaceKind> all_kinds() {
  std::vector<SurfaceKind> out{{SurfaceTag::Point, 0}, {SurfaceTag::P1, 0}, {SurfaceTag::PV, 0}, {SurfaceTag::P1xP1, 0}};
  for (int n = 1; n <= 4; ++n) {
    out.push_back({SurfaceTag::Fn, n});
    out.push_back({SurfaceTag::Pn, n});
    out.push_back({SurfaceTag::Kn, n});
  }
  return out;
}

}  // namespace

TEST_CASE("surface catalogue") {
  const auto fn = surface_data(parse_surface_kind("fn:1"));
  REQUIRE(fn.fixed_points == std::vector<std::string>{"x", "y", "z", "w"});
  CHECK(fn.tangent_weights[0] == std::vector<Character>{Character(IntVec{2}), Character(IntVec{1})});
  CHECK(fn.tangent_weights[1] == std::vector<Character>{Character(IntVec{-2}), Character(IntVec{-1})});
  CHECK(fn.tangent_weights[2] == std::vector<Character>{Character(IntVec{2}), Character(IntVec{-1})});
  CHECK(fn.tangent_weights[3] == std::vector<Character>{Character(IntVec{-2}), Character(IntVec{1})});
  CHECK(fn.relations.size() == 5);

  const std::vector<std::pair<std::string, std::size_t>> counts{{"point", 1}, {"p1", 2}, {"pv", 3}, {"p1p1", 4},
                                                                {"fn:2", 4},  {"pn:3", 3}, {"kn:2", 2}};
  for (const auto& [k, c] : counts) CHECK(surface_data(parse_surface_kind(k)).fixed_points.size() == c);
  CHECK(surface_data(parse_surface_kind("pv")).relations.size() == 4);
  CHECK(surface_data(parse_surface_kind("p1p1")).relations.size() == 5);
  CHECK(surface_data(parse_surface_kind("pn:2")).relations.size() == 4);
  CHECK(surface_data(parse_surface_kind("kn:3")).relations.size() == 1);
  CHECK_THROWS(parse_surface_kind("fn:0"));
  CHECK_THROWS(parse_surface_kind("torus"));
  CHECK(to_string(parse_surface_kind("pn:5")) == "pn:5");

  // PV: x - z only modulo 1 - e^{-4t}.
  const SurfaceKind pv = parse_surface_kind("pv");
  CHECK(check_relations(pv, {t("1 - e^{-4*t}"), t("0"), t("0")}).size() >= 1);
  const auto kn = parse_surface_kind("kn:2");
  CHECK(check_relations(kn, {t("1 - e^{-2*t}"), t("0")}).empty());
  CHECK(check_relations(kn, {t("1 - e^{-t}"), t("0")}).size() == 1);
}

TEST_CASE("P(V) triples") {
  const SurfaceKind pv = parse_surface_kind("pv");
  CHECK(check_relations(pv, {t("1"), t("1"), t("1")}).empty());
  CHECK(check_relations(pv, {t("0"), t("1 - e^{-2*t}"), t("1 - e^{-4*t}")}).empty());
  CHECK(check_relations(pv, {t("0"), t("0"), t("(1 - e^{-2*t})*(1 - e^{-4*t})")}).empty());
  const auto bad = check_relations(pv, {t("0"), t("0"), t("1 - e^{-4*t}")});
  REQUIRE(bad.size() == 1);
  CHECK(bad[0].name.find("f_x - e^{-2t}(1+e^{-2t}) f_y + e^{-6t} f_z") == 0);
  const auto m = membership(pv, {t("0"), t("0"), t("1 - e^{-4*t}")});
  CHECK(!m.member);
  CHECK(m.stuck_at == std::optional<std::size_t>(2));
}

TEST_CASE("standard bases restrict to unit vectors") {
  for (const auto& kind : all_kinds()) {
    CAPTURE(to_string(kind));
    const auto basis = standard_basis(kind);
    for (std::size_t k = 0; k < basis.elements.size(); ++k) {
      CHECK(check_relations(kind, basis.elements[k]).empty());
      const auto r = membership(kind, basis.elements[k]);
      REQUIRE(r.member);
      for (std::size_t i = 0; i < r.coefficients.size(); ++i)
        CHECK(r.coefficients[i] == LaurentPoly::constant(1, i == k ? 1 : 0));
    }
  }
}

TEST_CASE("Hirzebruch membership") {
  const SurfaceKind f2 = parse_surface_kind("fn:2");
  const auto one = membership(f2, {t("1"), t("1"), t("1"), t("1")});
  REQUIRE(one.member);
  CHECK(one.coefficients == std::vector<LaurentPoly>{t("1"), t("0"), t("0"), t("0")});
  const LaurentPoly g = t("3*e^{t} - e^{-5*t}");
  const LaurentPoly fiber = t("1 - e^{-2*t}") * g;
  const auto r = membership(f2, {t("0"), fiber, t("0"), fiber});
  REQUIRE(r.member);
  CHECK(r.coefficients == std::vector<LaurentPoly>{t("0"), g, t("0"), t("0")});
}

TEST_CASE("membership agrees with the relations on a bounded window") {
  for (const char* k : {"pv", "p1p1", "fn:1", "fn:2", "fn:3", "pn:1", "pn:2", "pn:3", "kn:2"}) {
    CAPTURE(k);
    const auto sweep = membership_oracle_sweep(parse_surface_kind(k), 8, 400, 17);
    CHECK(sweep.samples == 400);
    CHECK(sweep.disagreements == 0);
    CHECK(sweep.members > 50);
    CHECK(sweep.members < 350);
    for (const auto& e : sweep.examples) MESSAGE(e);
  }
}

TEST_CASE("ABBV integrality of accepted tuples") {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> e(-3, 3), c(-2, 2);
  for (const auto& kind : all_kinds()) {
    if (kind.tag == SurfaceTag::Kn) continue;
    CAPTURE(to_string(kind));
    const auto data = surface_data(kind);
    REQUIRE(data.multiplicities);
    CHECK(integrate(*data.multiplicities, FixedPointTuple(data.fixed_points.size(), t("1"))) == t("1"));
    const auto basis = standard_basis(kind);
    for (int trial = 0; trial < 10; ++trial) {
      FixedPointTuple f(data.fixed_points.size(), t("0"));
      for (const auto& b : basis.elements) {
        LaurentPoly g(1);
        g.add_term(Character(IntVec{e(rng)}), c(rng));
        for (std::size_t p = 0; p < f.size(); ++p) f[p] += g * b[p];
      }
      REQUIRE(check_relations(kind, f).empty());
      CHECK_NOTHROW(integrate(*data.multiplicities, f));
    }
  }
}

TEST_CASE("the sign of the f_w term is fixed by integrality") {
  // The Hirzebruch four-term relation with +e^{-2t} f_w would reject (1,1,1,1),
  // whose ABBV sum is 1.
  for (int n = 1; n <= 4; ++n) {
    const auto data = surface_data({SurfaceTag::Fn, n});
    auto alt = data.relations.back();
    alt.coefficients[3] = -alt.coefficients[3];
    const FixedPointTuple ones(4, t("1"));
    CHECK(integrate(*data.multiplicities, ones) == t("1"));
    CHECK(check_relations({data.relations.back()}, ones).empty());
    CHECK(check_relations({alt}, ones).size() == 1);
  }
  // The P_n three-term relation with e^{+nt} in the f_z coefficient rejects (1,1,1).
  for (int n = 1; n <= 4; ++n) {
    const auto data = surface_data({SurfaceTag::Pn, n});
    auto alt = data.relations.back();
    alt.coefficients[2] = -(t("e^{-2*t}") + LaurentPoly::monomial(Character(IntVec{n})));
    CHECK(check_relations({alt}, FixedPointTuple(3, t("1"))).size() == 1);
    CHECK(check_relations({data.relations.back()}, FixedPointTuple(3, t("1"))).empty());
  }
}

TEST_CASE("P_n is F_n with the contracted section's points identified") {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> e(-4, 4), c(-2, 2), pick(0, 2);
  for (int n = 1; n <= 4; ++n) {
    const SurfaceKind fn{SurfaceTag::Fn, n}, pn{SurfaceTag::Pn, n};
    const auto basis = standard_basis(fn);
    for (int trial = 0; trial < 40; ++trial) {
      FixedPointTuple f(3, t("0"));
      for (auto& x : f) {
        x.add_term(Character(IntVec{e(rng)}), c(rng));
        if (pick(rng) == 0) x *= t("1 - e^{-2*t}");
        if (pick(rng) == 0) x *= LaurentPoly::constant(1, 1) - LaurentPoly::monomial(Character(IntVec{-n}));
      }
      const FixedPointTuple lifted{f[0], f[1], f[2], f[2]};
      CHECK(check_relations(pn, f).empty() == check_relations(fn, lifted).empty());
    }
  }
}

TEST_CASE("skeleton parsing and assembly") {
  const auto sk = parse_skeleton("# a P(V) component\npoint a\npoint b\npoint c\nsurface pv root t points a b c\n");
  const auto rel = assemble_system(sk);
  CHECK(rel.size() == 4);
  CHECK(rel.back().modulus == std::vector<Character>{Character(IntVec{1}), Character(IntVec{2})});
  const auto v = check_skeleton(sk, {t("0"), t("0"), t("1 - e^{-2*t}")});
  REQUIRE(v.size() == 1);
  CHECK(v[0].name.find("pv (root t; a b c)") == 0);
  CHECK(check_skeleton(sk, {t("1"), t("1"), t("1")}).empty());

  const auto rank2 = parse_skeleton("rank 2\npoint p\npoint q\ncurve p q weight u1-u2\n");
  CHECK(assemble_system(rank2).size() == 1);
  const LaurentPoly d = parse_laurent("1 - e^{-u1+u2}", 2);
  CHECK(check_skeleton(rank2, {d, LaurentPoly(2)}).empty());
  CHECK(check_skeleton(rank2, {parse_laurent("1 - e^{-u1}", 2), LaurentPoly(2)}).size() == 1);

  const auto odd = parse_skeleton("rank 2\npoint x\npoint y\npoint z\npoint w\nsurface fn:3 root u1+u2 points x y z w\n");
  CHECK_THROWS_AS(assemble_system(odd), HalfWeightNotIntegral);
  const auto even = parse_skeleton("rank 2\npoint x\npoint y\npoint z\npoint w\nsurface fn:3 root 2*u1 points x y z w\n");
  CHECK(assemble_system(even).size() == 5);
  const auto f2 = parse_skeleton("rank 2\npoint x\npoint y\npoint z\npoint w\nsurface fn:2 root u1+u2 points x y z w\n");
  CHECK(assemble_system(f2).size() == 5);

  CHECK_THROWS_AS(parse_skeleton("point a\ncurve a b weight t\n"), SkeletonError);
  CHECK_THROWS_AS(parse_skeleton("point a\nrank 2\n"), SkeletonError);
  CHECK_THROWS_AS(parse_skeleton("point a\npoint b\nsurface pv root t points a b\n"), SkeletonError);
  CHECK_THROWS_AS(parse_skeleton("point a\npoint b\ncurve a b weight 0\n"), SkeletonError);
}

TEST_CASE("curve-only skeletons reproduce the GKM check") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> e(-2, 2), coin(0, 2);
  const Fan p1p1(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                 {Cone{{0, 1}}, Cone{{1, 2}}, Cone{{2, 3}}, Cone{{0, 3}}});
  const Fan hexagon(2, {{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}},
                    {Cone{{0, 1}}, Cone{{1, 2}}, Cone{{2, 3}}, Cone{{3, 4}}, Cone{{4, 5}}, Cone{{0, 5}}});
  for (const Fan* fan : {&p1p1, &hexagon}) {
    SphericalSkeleton sk;
    sk.rank = 2;
    for (std::size_t p = 0; p < fan->maximal().size(); ++p) sk.points.push_back(std::to_string(p));
    for (const auto& w : walls(*fan)) sk.curves.push_back({std::to_string(w.left), std::to_string(w.right), w.weight});
    int rejected = 0;
    for (int trial = 0; trial < 60; ++trial) {
      IntVec a(fan->rays().size());
      for (auto& x : a) x = e(rng);
      FixedPointTuple f = divisor_tuple(*fan, a);
      for (auto& x : f)
        if (coin(rng) == 0) x += LaurentPoly::monomial(Character(IntVec{e(rng), e(rng)}));
      const bool gkm = gkm_check(*fan, f).empty();
      CHECK(gkm == check_skeleton(sk, f).empty());
      if (!gkm) ++rejected;
    }
    CHECK(rejected > 0);
  }
}
