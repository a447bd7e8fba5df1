#include "eqloc/corpus.hpp"

#include <algorithm>
#include <functional>

namespace eqloc {

namespace {

// Counter-clockwise order starting from the positive x-axis.
bool angle_less(const IntVec& a, const IntVec& b) {
  auto half = [](const IntVec& v) { return v[1] < 0 || (v[1] == 0 && v[0] < 0) ? 1 : 0; };
  if (half(a) != half(b)) return half(a) < half(b);
  return a[0] * b[1] - a[1] * b[0] > 0;
}

Fan fan_of(std::size_t rank, IntMat rays, std::vector<std::vector<std::size_t>> cones) {
  std::vector<Cone> c;
  for (auto& x : cones) c.push_back(Cone{std::move(x)});
  return Fan(rank, std::move(rays), std::move(c));
}

Fan all_subsets_fan(std::size_t rank, IntMat rays) {
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t skip = 0; skip < rays.size(); ++skip) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  return fan_of(rank, std::move(rays), std::move(cones));
}

Fan cycle_fan(IntMat rays) {
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t i = 0; i < rays.size(); ++i) cones.push_back({i, (i + 1) % rays.size()});
  return fan_of(2, std::move(rays), std::move(cones));
}

IntVec scaled_divisor(const IntVec& d, std::int64_t k) { return scaled(d, k); }

std::vector<IntVec> nef_family(const Fan& fan, const IntVec& ample) {
  IntVec shift(fan.rank(), 0);
  for (std::size_t i = 0; i < shift.size(); ++i) shift[i] = i % 2 == 0 ? 1 : -1;
  return {IntVec(fan.rays().size(), 0), ample, scaled_divisor(ample, 2), shifted_divisor(fan, ample, shift)};
}

}  // namespace

IntVec shifted_divisor(const Fan& fan, const IntVec& divisor, const IntVec& m) {
  IntVec out = divisor;
  for (std::size_t r = 0; r < out.size(); ++r) out[r] += dot(m, fan.ray(r));
  return out;
}

std::optional<IntVec> find_ample(const Fan& fan, int max_coeff) {
  const std::size_t k = fan.rays().size();
  for (int total = 1; total <= max_coeff * static_cast<int>(k); ++total) {
    std::optional<IntVec> found;
    IntVec a(k, 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (found) return;
      if (i + 1 == k) {
        if (left > max_coeff) return;
        a[i] = left;
        if (is_ample(fan, a)) found = a;
        return;
      }
      for (int x = std::min(left, max_coeff); x >= 0 && !found; --x) {
        a[i] = x;
        rec(i + 1, left - x);
      }
    };
    rec(0, total);
    if (found) return found;
  }
  return std::nullopt;
}

Fan random_complete_fan_2d(std::mt19937& rng, int max_coord) {
  std::uniform_int_distribution<int> coord(-max_coord, max_coord), count(4, 6);
  for (;;) {
    IntMat rays;
    const int k = count(rng);
    while (static_cast<int>(rays.size()) < k) {
      IntVec v{coord(rng), coord(rng)};
      if (!is_primitive(v)) continue;
      if (std::find(rays.begin(), rays.end(), v) != rays.end()) continue;
      rays.push_back(v);
    }
    std::sort(rays.begin(), rays.end(), angle_less);
    bool ok = true;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const auto& a = rays[i];
      const auto& b = rays[(i + 1) % rays.size()];
      if (a[0] * b[1] - a[1] * b[0] <= 0) ok = false;
    }
    if (ok) return cycle_fan(rays);
  }
}

PolygonFan random_polygon_fan(std::mt19937& rng, int max_coord) {
  std::uniform_int_distribution<int> coord(-max_coord, max_coord), count(3, 7);
  auto cross = [](const IntVec& o, const IntVec& a, const IntVec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  for (;;) {
    IntMat points;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) points.push_back({coord(rng), coord(rng)});
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.size() < 3) continue;
    // Monotone chain, counter-clockwise, collinear points dropped.
    IntMat hull(2 * points.size());
    std::size_t h = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      while (h >= 2 && cross(hull[h - 2], hull[h - 1], points[i]) <= 0) --h;
      hull[h++] = points[i];
    }
    for (std::size_t i = points.size() - 1, lower = h + 1; i-- > 0;) {
      while (h >= lower && cross(hull[h - 2], hull[h - 1], points[i]) <= 0) --h;
      hull[h++] = points[i];
    }
    hull.resize(h - 1);
    if (hull.size() < 3) continue;
    // Edge p -> q (counter-clockwise) has inward normal (-(q-p)_y, (q-p)_x) rotated left.
    IntMat rays;
    IntVec ample;
    for (std::size_t i = 0; i < hull.size(); ++i) {
      const IntVec& p = hull[i];
      const IntVec& q = hull[(i + 1) % hull.size()];
      const IntVec normal = primitive_part(IntVec{-(q[1] - p[1]), q[0] - p[0]});
      rays.push_back(normal);
      ample.push_back(-dot(normal, p));
    }
    // Cone at vertex i+1 is spanned by the normals of its two edges.
    std::vector<std::vector<std::size_t>> cones;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      std::vector<std::size_t> c{i, (i + 1) % rays.size()};
      std::sort(c.begin(), c.end());
      cones.push_back(c);
    }
    return {fan_of(2, std::move(rays), std::move(cones)), std::move(ample)};
  }
}

Refinement random_stellar_refinement(const Fan& fan, std::mt19937& rng, int steps) {
  Refinement current{Fan(fan.rank(), fan.rays(), fan.maximal()), {}};
  for (std::size_t i = 0; i < fan.maximal().size(); ++i) current.parent.push_back(i);
  std::uniform_int_distribution<int> weight(0, 2);
  for (int s = 0; s < steps; ++s) {
    const Fan& f = current.fan;
    std::uniform_int_distribution<std::size_t> pick(0, f.maximal().size() - 1);
    const Cone& c = f.maximal()[pick(rng)];
    IntVec v(f.rank(), 0);
    int used = 0;
    for (auto r : c.rays) {
      const int w = weight(rng);
      if (w > 0) ++used;
      v = add(v, scaled(f.ray(r), w));
    }
    if (used < 2) continue;
    v = primitive_part(v);
    if (std::find(f.rays().begin(), f.rays().end(), v) != f.rays().end()) continue;
    Refinement step = stellar_subdivide(f, v);
    for (auto& p : step.parent) p = current.parent[p];
    current = std::move(step);
  }
  return current;
}

std::vector<CorpusEntry> regression_corpus() {
  std::vector<CorpusEntry> out;
  auto add_entry = [&](std::string name, Fan fan, const IntVec& ample) {
    auto nef = nef_family(fan, ample);
    out.push_back({std::move(name), std::move(fan), std::move(nef)});
  };
  auto add_searched = [&](std::string name, Fan fan) {
    const auto ample = find_ample(fan, 3);
    if (!ample) throw std::logic_error("no ample divisor found for " + name);
    add_entry(std::move(name), std::move(fan), *ample);
  };
  auto add_refinement = [&](std::string name, const Fan& base, const IntVec& ample, const Refinement& r) {
    add_entry(std::move(name), Fan(r.fan.rank(), r.fan.rays(), r.fan.maximal()), pullback_divisor(base, r, ample));
  };

  const Fan p1 = fan_of(1, {{1}, {-1}}, {{0}, {1}});
  add_entry("P1", p1, {0, 1});
  const Fan p2 = cycle_fan({{1, 0}, {0, 1}, {-1, -1}});
  add_entry("P2", p2, {0, 0, 1});
  const Fan p1p1 = cycle_fan({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  add_entry("P1xP1", p1p1, {0, 0, 1, 1});
  const Fan p112 = fan_of(2, {{1, 0}, {0, 1}, {-1, -2}}, {{0, 1}, {0, 2}, {1, 2}});
  add_entry("P(1,1,2)", p112, {0, 0, 2});
  for (int n = 1; n <= 3; ++n) add_searched("F" + std::to_string(n), cycle_fan({{1, 0}, {0, 1}, {-1, n}, {0, -1}}));
  const Fan p123 = all_subsets_fan(2, {{-2, -3}, {1, 0}, {0, 1}});
  add_searched("P(1,2,3)", p123);
  add_searched("hexagon", cycle_fan({{1, 0}, {1, 1}, {0, 1}, {-1, 0}, {-1, -1}, {0, -1}}));

  IntMat cube_rays;
  for (int x : {1, -1})
    for (int y : {1, -1})
      for (int z : {1, -1}) cube_rays.push_back({x, y, z});
  const Fan cube = fan_of(3, cube_rays, {{0, 1, 2, 3}, {4, 5, 6, 7}, {0, 1, 4, 5}, {2, 3, 6, 7}, {0, 2, 4, 6}, {1, 3, 5, 7}});
  const IntVec cube_ample(8, 1);
  add_entry("cube", cube, cube_ample);

  const Fan p3 = all_subsets_fan(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, -1, -1}});
  add_entry("P3", p3, {0, 0, 0, 1});
  std::vector<std::vector<std::size_t>> octants;
  for (std::size_t x : {0u, 3u})
    for (std::size_t y : {1u, 4u})
      for (std::size_t z : {2u, 5u}) octants.push_back({x, y, z});
  const Fan p1cubed = fan_of(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}, {0, -1, 0}, {0, 0, -1}}, octants);
  add_entry("P1xP1xP1", p1cubed, {0, 0, 0, 1, 1, 1});
  const Fan p2p1 = fan_of(3, {{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}, {0, 0, 1}, {0, 0, -1}},
                          {{0, 1, 3}, {1, 2, 3}, {0, 2, 3}, {0, 1, 4}, {1, 2, 4}, {0, 2, 4}});
  add_entry("P2xP1", p2p1, {0, 0, 1, 0, 1});
  const Fan p1112 = all_subsets_fan(3, {{-1, -1, -2}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  add_searched("P(1,1,1,2)", p1112);

  add_refinement("P(1,1,2) resolved", p112, out[3].nef_divisors[1], resolve(p112));
  for (const auto& e : std::vector<CorpusEntry>(out)) {
    if (e.name == "P(1,2,3)") add_refinement("P(1,2,3) resolved", e.fan, e.nef_divisors[1], resolve(e.fan));
    if (e.name == "P(1,1,1,2)") add_refinement("P(1,1,1,2) resolved", e.fan, e.nef_divisors[1], resolve(e.fan));
  }
  add_refinement("cube triangulated", cube, cube_ample, stellar_triangulate(cube));
  add_refinement("cube resolved", cube, cube_ample, resolve(cube));

  std::mt19937 rng(20240611);
  for (int i = 0; i < 3; ++i) {
    const auto [f, ample] = random_polygon_fan(rng);
    const std::string name = "random polygon " + std::to_string(i);
    add_entry(name, f, ample);
    add_refinement(name + " resolved", f, ample, resolve(f));
  }
  // Random star subdivisions followed by resolution: smooth refinements.
  auto smooth_refinement = [&](const Fan& base, int steps) {
    const Refinement star = random_stellar_refinement(base, rng, steps);
    Refinement smooth = resolve(star.fan);
    for (auto& p : smooth.parent) p = star.parent[p];
    return smooth;
  };
  add_refinement("P2 random smooth refinement", p2, {0, 0, 1}, smooth_refinement(p2, 3));
  add_refinement("P1xP1 random smooth refinement", p1p1, {0, 0, 1, 1}, smooth_refinement(p1p1, 3));
  add_refinement("P3 random smooth refinement", p3, {0, 0, 0, 1}, smooth_refinement(p3, 2));
  add_refinement("P1xP1xP1 random smooth refinement", p1cubed, {0, 0, 0, 1, 1, 1}, smooth_refinement(p1cubed, 2));
  return out;
}

}  // namespace eqloc
