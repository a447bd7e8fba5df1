#include "eqloc/fan.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace eqloc {

namespace {

using Positions = std::vector<std::size_t>;

struct FacetData {
  Positions members;
  IntVec normal;  // nonnegative on the cone, zero exactly on the facet
};

IntMat transposed(const IntMat& a, std::size_t ncols) {
  IntMat t(ncols, IntVec(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < ncols; ++j) t[j][i] = a[i][j];
  return t;
}

IntMat select(const IntMat& rows, const Positions& idx) {
  IntMat out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(rows[i]);
  return out;
}

// Calls f on every k-element subset of {0..n-1}, in lexicographic order.
void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const Positions&)>& f) {
  if (k > n) return;
  Positions s(k);
  for (std::size_t i = 0; i < k; ++i) s[i] = i;
  for (;;) {
    f(s);
    std::size_t i = k;
    while (i > 0 && s[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++s[i - 1];
    for (std::size_t j = i; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

std::vector<FacetData> facet_data(const IntMat& rays) {
  std::vector<FacetData> out;
  if (rays.empty()) return out;
  const std::size_t n = rays.front().size();
  const std::size_t d = rank_of(rays, n);
  if (d == 0) return out;
  const IntMat orth = integer_kernel(rays, n);
  std::set<Positions> seen;
  for_each_subset(rays.size(), d - 1, [&](const Positions& sub) {
    IntMat eqs = select(rays, sub);
    if (rank_of(eqs, n) != d - 1) return;
    eqs.insert(eqs.end(), orth.begin(), orth.end());
    const IntMat k = integer_kernel(eqs, n);
    if (k.size() != 1) return;
    IntVec u = k.front();
    bool pos = false, neg = false;
    Positions zero;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const auto s = dot(u, rays[i]);
      if (s > 0) pos = true;
      if (s < 0) neg = true;
      if (s == 0) zero.push_back(i);
    }
    if (pos && neg) return;
    if (neg) u = negated(u);
    if (seen.insert(zero).second) out.push_back({zero, u});
  });
  return out;
}

void collect_faces(const IntMat& rays, const Positions& labels, std::set<Positions>& out) {
  Positions sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (!out.insert(sorted).second) return;
  for (const auto& f : facet_data(rays)) {
    Positions sub_labels;
    for (auto i : f.members) sub_labels.push_back(labels[i]);
    collect_faces(select(rays, f.members), sub_labels, out);
  }
}

Rational to_rational(std::int64_t x) { return Rational(static_cast<long>(x)); }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Candidate rays of {x : <u,x> >= 0 for u in ineq, <e,x> = 0 for e in eq}.
// Every extreme ray of this pointed cone is among the results.
std::vector<IntVec> intersection_rays(const IntMat& ineq, const IntMat& eq, std::size_t n) {
  std::vector<IntVec> out;
  const std::size_t eq_rank = rank_of(eq, n);
  if (eq_rank >= n) return out;
  const std::size_t need = n - 1 - eq_rank;
  std::set<IntVec> seen;
  for_each_subset(ineq.size(), need, [&](const Positions& sub) {
    IntMat rows = eq;
    for (auto i : sub) rows.push_back(ineq[i]);
    const IntMat k = integer_kernel(rows, n);
    if (k.size() != 1) return;
    for (const IntVec& x : {k.front(), negated(k.front())}) {
      bool ok = std::all_of(ineq.begin(), ineq.end(), [&](const IntVec& u) { return dot(u, x) >= 0; });
      if (ok && seen.insert(x).second) out.push_back(x);
    }
  });
  return out;
}

Cone make_cone(Positions rays) {
  std::sort(rays.begin(), rays.end());
  rays.erase(std::unique(rays.begin(), rays.end()), rays.end());
  return Cone{std::move(rays)};
}

bool is_subset(const Cone& small, const Cone& big) {
  return std::includes(big.rays.begin(), big.rays.end(), small.rays.begin(), small.rays.end());
}

}  // namespace

const char* to_string(FanError::Kind kind) {
  switch (kind) {
    case FanError::Kind::Syntax: return "syntax";
    case FanError::Kind::RankMismatch: return "rank-mismatch";
    case FanError::Kind::NonPrimitiveRay: return "non-primitive-ray";
    case FanError::Kind::DuplicateRay: return "duplicate-ray";
    case FanError::Kind::BadRayIndex: return "bad-ray-index";
    case FanError::Kind::RedundantGenerator: return "redundant-generator";
    case FanError::Kind::NonPointedCone: return "non-pointed-cone";
    case FanError::Kind::OverlappingCones: return "overlapping-cones";
    case FanError::Kind::NotComplete: return "not-complete";
    case FanError::Kind::NotSimplicial: return "not-simplicial";
    case FanError::Kind::NotSmooth: return "not-smooth";
    case FanError::Kind::NotFullDimensional: return "not-full-dimensional";
    case FanError::Kind::NotCartier: return "not-cartier";
    case FanError::Kind::UnknownCone: return "unknown-cone";
    case FanError::Kind::UnknownDivisor: return "unknown-divisor";
  }
  return "unknown";
}

std::string to_string(const Cone& c) {
  std::string out = "<";
  for (std::size_t i = 0; i < c.rays.size(); ++i) out += (i ? "," : "") + std::to_string(c.rays[i]);
  return out + ">";
}

// ---------------------------------------------------------------------------
// Cone geometry

std::vector<std::vector<std::size_t>> cone_facets(const IntMat& rays) {
  std::vector<Positions> out;
  for (auto& f : facet_data(rays)) out.push_back(std::move(f.members));
  return out;
}

std::vector<std::vector<std::size_t>> cone_faces(const IntMat& rays) {
  std::set<Positions> faces;
  Positions all(rays.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  collect_faces(rays, all, faces);
  return {faces.begin(), faces.end()};
}

bool cone_is_pointed(const IntMat& rays) {
  if (rays.empty()) return true;
  const std::size_t n = rays.front().size();
  const std::size_t d = rank_of(rays, n);
  IntMat normals;
  for (const auto& f : facet_data(rays)) normals.push_back(f.normal);
  return rank_of(normals, n) == d;
}

// ---------------------------------------------------------------------------
// Fan

Fan::Fan(std::size_t rank, IntMat rays, std::vector<Cone> maximal, std::vector<NamedDivisor> divisors)
    : rank_(rank), rays_(std::move(rays)), divisors_(std::move(divisors)) {
  using K = FanError::Kind;
  std::set<IntVec> distinct;
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    const auto& r = rays_[i];
    if (r.size() != rank_)
      throw FanError(K::RankMismatch, "ray " + std::to_string(i) + " has " + std::to_string(r.size()) +
                                          " coordinates, expected " + std::to_string(rank_));
    if (!is_primitive(r)) throw FanError(K::NonPrimitiveRay, "ray " + std::to_string(i) + " is not primitive");
    if (!distinct.insert(r).second) throw FanError(K::DuplicateRay, "ray " + std::to_string(i) + " is repeated");
  }

  std::set<Cone> all;
  std::vector<std::set<Cone>> faces_of;
  for (std::size_t k = 0; k < maximal.size(); ++k) {
    for (auto i : maximal[k].rays)
      if (i >= rays_.size())
        throw FanError(K::BadRayIndex, "cone " + std::to_string(k) + " uses ray index " + std::to_string(i));
    Cone c = make_cone(maximal[k].rays);
    const IntMat v = ray_vectors(c);
    if (!cone_is_pointed(v)) throw FanError(K::NonPointedCone, "cone " + std::to_string(k) + " is not pointed");
    std::set<Cone> faces;
    for (const auto& f : cone_faces(v)) {
      Positions global;
      for (auto p : f) global.push_back(c.rays[p]);
      faces.insert(make_cone(std::move(global)));
    }
    for (auto i : c.rays)
      if (!faces.count(Cone{{i}}))
        throw FanError(K::RedundantGenerator,
                       "ray " + std::to_string(i) + " is not an extreme ray of cone " + std::to_string(k));
    all.insert(faces.begin(), faces.end());
    faces_of.push_back(std::move(faces));
    maximal_.push_back(std::move(c));
  }

  // Two cones must meet in a common face.
  for (std::size_t a = 0; a < maximal_.size(); ++a) {
    for (std::size_t b = a + 1; b < maximal_.size(); ++b) {
      const auto pair_text = std::to_string(a) + " and " + std::to_string(b);
      Cone common;
      std::set_intersection(maximal_[a].rays.begin(), maximal_[a].rays.end(), maximal_[b].rays.begin(),
                            maximal_[b].rays.end(), std::back_inserter(common.rays));
      if (common == maximal_[a] || common == maximal_[b])
        throw FanError(K::OverlappingCones, "cones " + pair_text + ": one is a face of the other");
      if (!faces_of[a].count(common) || !faces_of[b].count(common))
        throw FanError(K::OverlappingCones, "cones " + pair_text + " share rays that do not form a common face");
      IntMat ineq, eq;
      for (std::size_t s : {a, b}) {
        const IntMat v = ray_vectors(maximal_[s]);
        for (const auto& f : facet_data(v)) ineq.push_back(f.normal);
        const IntMat orth = integer_kernel(v, rank_);
        eq.insert(eq.end(), orth.begin(), orth.end());
      }
      const IntMat common_rays = ray_vectors(common);
      const std::size_t common_rank = rank_of(common_rays, rank_);
      for (const auto& x : intersection_rays(ineq, eq, rank_)) {
        IntMat with = common_rays;
        with.push_back(x);
        if (rank_of(with, rank_) != common_rank)
          throw FanError(K::OverlappingCones, "cones " + pair_text + " overlap beyond a common face");
      }
    }
  }

  cones_.assign(all.begin(), all.end());
  std::stable_sort(cones_.begin(), cones_.end(), [this](const Cone& x, const Cone& y) {
    const auto dx = dimension(x), dy = dimension(y);
    return dx != dy ? dx < dy : x < y;
  });

  complete_ = true;
  if (rank_ == 0) {
    complete_ = maximal_.size() == 1;
  } else {
    for (const auto& c : maximal_)
      if (dimension(c) != rank_) complete_ = false;
    for (const auto& c : cones_)
      if (complete_ && dimension(c) == rank_ - 1 && maximal_containing(c).size() != 2) complete_ = false;
  }

  for (const auto& d : divisors_)
    if (d.coefficients.size() != rays_.size())
      throw FanError(K::RankMismatch, "divisor " + d.name + " needs one coefficient per ray");
}

const NamedDivisor& Fan::divisor(std::string_view name) const {
  for (const auto& d : divisors_)
    if (d.name == name) return d;
  throw FanError(FanError::Kind::UnknownDivisor, "no divisor named '" + std::string(name) + "'");
}

IntMat Fan::ray_vectors(const Cone& c) const { return select(rays_, c.rays); }

std::size_t Fan::dimension(const Cone& c) const { return rank_of(ray_vectors(c), rank_); }

bool Fan::contains(const Cone& c) const { return std::find(cones_.begin(), cones_.end(), c) != cones_.end(); }

std::vector<std::size_t> Fan::maximal_containing(const Cone& c) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < maximal_.size(); ++i)
    if (is_subset(c, maximal_[i])) out.push_back(i);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing

Fan parse_fan(std::string_view text) {
  using K = FanError::Kind;
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<std::size_t> rank;
  IntMat rays;
  std::vector<Cone> cones;
  std::vector<NamedDivisor> divisors;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) -> FanError {
    return FanError(K::Syntax, "line " + std::to_string(lineno) + ": " + msg);
  };
  auto read_ints = [&](std::istringstream& ls) {
    IntVec v;
    std::string tok;
    while (ls >> tok) {
      try {
        std::size_t used = 0;
        long long x = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        v.push_back(x);
      } catch (const std::exception&) {
        throw fail("expected an integer, got '" + tok + "'");
      }
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "rank") {
      if (rank) throw fail("rank given twice");
      IntVec v = read_ints(ls);
      if (v.size() != 1 || v[0] < 0) throw fail("rank needs one non-negative integer");
      rank = static_cast<std::size_t>(v[0]);
    } else if (!rank) {
      throw fail("the first statement must be 'rank n'");
    } else if (key == "ray") {
      IntVec v = read_ints(ls);
      if (v.size() != *rank)
        throw FanError(K::RankMismatch, "line " + std::to_string(lineno) + ": ray has " + std::to_string(v.size()) +
                                            " coordinates, expected " + std::to_string(*rank));
      rays.push_back(std::move(v));
    } else if (key == "cone") {
      IntVec v = read_ints(ls);
      Cone c;
      for (auto i : v) {
        if (i < 0 || static_cast<std::size_t>(i) >= rays.size())
          throw FanError(K::BadRayIndex, "line " + std::to_string(lineno) + ": no ray with index " + std::to_string(i));
        c.rays.push_back(static_cast<std::size_t>(i));
      }
      cones.push_back(std::move(c));
    } else if (key == "divisor") {
      std::string name;
      if (!(ls >> name)) throw fail("divisor needs a name");
      divisors.push_back({name, read_ints(ls)});
    } else {
      throw fail("unknown statement '" + key + "'");
    }
  }
  if (!rank) throw FanError(K::Syntax, "missing 'rank n'");
  return Fan(*rank, std::move(rays), std::move(cones), std::move(divisors));
}

std::string write_fan(const Fan& fan) {
  std::ostringstream out;
  out << "rank " << fan.rank() << "\n";
  for (const auto& r : fan.rays()) {
    out << "ray";
    for (auto x : r) out << " " << x;
    out << "\n";
  }
  for (const auto& c : fan.maximal()) {
    out << "cone";
    for (auto i : c.rays) out << " " << i;
    out << "\n";
  }
  for (const auto& d : fan.divisors()) {
    out << "divisor " << d.name;
    for (auto x : d.coefficients) out << " " << x;
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Cone invariants

bool is_simplicial(const Fan& fan, const Cone& c) { return fan.dimension(c) == c.rays.size(); }

Integer multiplicity(const Fan& fan, const Cone& c) {
  if (!is_simplicial(fan, c)) throw FanError(FanError::Kind::NotSimplicial, "cone " + to_string(c) + " is not simplicial");
  if (c.rays.empty()) return 1;
  return maximal_minor_gcd(fan.ray_vectors(c));
}

bool is_smooth(const Fan& fan, const Cone& c) { return is_simplicial(fan, c) && multiplicity(fan, c) == 1; }

std::vector<Character> dual_generators(const Fan& fan, const Cone& c) {
  if (fan.dimension(c) != fan.rank() || c.rays.size() != fan.rank())
    throw FanError(FanError::Kind::NotFullDimensional, "cone " + to_string(c) + " is not full-dimensional simplicial");
  if (fan.rank() == 0) return {};
  Integer det;
  const IntMat w = scaled_dual_basis(fan.ray_vectors(c), det);
  if (det != 1 && det != -1) throw FanError(FanError::Kind::NotSmooth, "cone " + to_string(c) + " is not smooth");
  std::vector<Character> out;
  for (const auto& row : w) out.emplace_back(det == 1 ? row : negated(row));
  return out;
}

std::vector<Wall> walls(const Fan& fan) {
  if (!fan.is_complete()) throw FanError(FanError::Kind::NotComplete, "walls need a complete fan");
  std::vector<Wall> out;
  const std::size_t n = fan.rank();
  if (n == 0) return out;
  for (const auto& c : fan.cones()) {
    if (fan.dimension(c) != n - 1) continue;
    const auto adj = fan.maximal_containing(c);
    const IntMat k = integer_kernel(fan.ray_vectors(c), n);
    out.push_back(Wall{c, adj.at(0), adj.at(1), Character(canonical_direction(k.at(0)))});
  }
  return out;
}

std::vector<ParallelepipedPoint> parallelepiped_points(const IntMat& rays) {
  if (rays.empty()) return {};
  const std::size_t n = rays.front().size();
  if (rank_of(rays, n) != rays.size()) throw LatticeError("parallelepiped of a non-simplicial cone");
  const IntMat span_basis = integer_kernel(integer_kernel(rays, n), n);

  auto reduce = [&](const IntVec& x) {
    auto coeffs = *solve_combination(rays, x);
    IntVec y = x;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      const Integer f = floor_of(coeffs[i]);
      if (f != 0) y = add(y, scaled(rays[i], -to_int64(f)));
      coeffs[i] -= Rational(f);
    }
    return ParallelepipedPoint{y, coeffs};
  };

  std::map<IntVec, std::vector<Rational>> found;
  std::deque<IntVec> queue{IntVec(n, 0)};
  found.emplace(IntVec(n, 0), std::vector<Rational>(rays.size()));
  while (!queue.empty()) {
    const IntVec p = queue.front();
    queue.pop_front();
    for (const auto& g : span_basis) {
      auto next = reduce(add(p, g));
      if (found.emplace(next.point, next.coefficients).second) queue.push_back(next.point);
    }
  }
  std::vector<ParallelepipedPoint> out;
  for (auto& [p, c] : found)
    if (!is_zero(p)) out.push_back({p, c});
  return out;
}

// ---------------------------------------------------------------------------
// Refinements

namespace {

void pull(const IntMat& all_rays, const Positions& cone, std::vector<Positions>& out) {
  const IntMat v = select(all_rays, cone);
  const std::size_t n = all_rays.empty() ? 0 : all_rays.front().size();
  if (rank_of(v, n) == cone.size()) {
    out.push_back(cone);
    return;
  }
  const std::size_t apex = *std::min_element(cone.begin(), cone.end());
  for (const auto& f : cone_facets(v)) {
    Positions facet;
    for (auto p : f) facet.push_back(cone[p]);
    if (std::find(facet.begin(), facet.end(), apex) != facet.end()) continue;
    std::vector<Positions> pieces;
    pull(all_rays, facet, pieces);
    for (auto& piece : pieces) {
      piece.push_back(apex);
      std::sort(piece.begin(), piece.end());
      out.push_back(std::move(piece));
    }
  }
}

Refinement identity_refinement(const Fan& fan) {
  Refinement r{Fan(fan.rank(), fan.rays(), fan.maximal()), {}};
  for (std::size_t i = 0; i < fan.maximal().size(); ++i) r.parent.push_back(i);
  return r;
}

}  // namespace

Refinement stellar_triangulate(const Fan& fan) {
  bool simplicial = std::all_of(fan.maximal().begin(), fan.maximal().end(),
                                [&](const Cone& c) { return is_simplicial(fan, c); });
  if (simplicial) return identity_refinement(fan);
  std::vector<Cone> cones;
  std::vector<std::size_t> parent;
  for (std::size_t k = 0; k < fan.maximal().size(); ++k) {
    std::vector<Positions> pieces;
    pull(fan.rays(), fan.maximal()[k].rays, pieces);
    for (auto& p : pieces) {
      cones.push_back(Cone{std::move(p)});
      parent.push_back(k);
    }
  }
  return Refinement{Fan(fan.rank(), fan.rays(), std::move(cones)), std::move(parent)};
}

Refinement stellar_subdivide(const Fan& fan, const IntVec& v) {
  if (!is_primitive(v)) throw LatticeError("stellar subdivision needs a primitive vector");
  for (const auto& c : fan.maximal())
    if (!is_simplicial(fan, c)) throw FanError(FanError::Kind::NotSimplicial, "stellar subdivision needs a simplicial fan");
  std::optional<Cone> tau;
  for (const auto& c : fan.maximal()) {
    const IntMat rays = fan.ray_vectors(c);
    if (rank_of(rays, fan.rank()) == 0) continue;
    IntMat with = rays;
    with.push_back(v);
    if (rank_of(with, fan.rank()) != rays.size()) continue;
    const auto coeffs = *solve_combination(rays, v);
    if (std::any_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return q < 0; })) continue;
    Cone t;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] > 0) t.rays.push_back(c.rays[i]);
    tau = std::move(t);
    break;
  }
  if (!tau) throw LatticeError("vector lies outside the support of the fan");
  if (tau->rays.size() == 1) return identity_refinement(fan);

  IntMat rays = fan.rays();
  const std::size_t fresh = rays.size();
  rays.push_back(v);
  std::vector<Cone> cones;
  std::vector<std::size_t> parent;
  for (std::size_t k = 0; k < fan.maximal().size(); ++k) {
    const Cone& c = fan.maximal()[k];
    if (!is_subset(*tau, c)) {
      cones.push_back(c);
      parent.push_back(k);
      continue;
    }
    for (auto rho : tau->rays) {
      Positions piece;
      for (auto i : c.rays)
        if (i != rho) piece.push_back(i);
      piece.push_back(fresh);
      cones.push_back(make_cone(std::move(piece)));
      parent.push_back(k);
    }
  }
  return Refinement{Fan(fan.rank(), std::move(rays), std::move(cones)), std::move(parent)};
}

Refinement resolve(const Fan& fan, PivotPolicy policy) {
  Refinement current = stellar_triangulate(fan);
  for (;;) {
    const Fan& f = current.fan;
    std::optional<std::size_t> target;
    Integer worst = 1;
    for (std::size_t k = 0; k < f.maximal().size(); ++k) {
      const Integer m = multiplicity(f, f.maximal()[k]);
      if (m == 1) continue;
      if (policy == PivotPolicy::FirstCone) {
        target = k;
        break;
      }
      if (m > worst || (m == worst && target && f.maximal()[k] < f.maximal()[*target])) {
        worst = m;
        target = k;
      }
    }
    if (!target) return current;

    const auto points = parallelepiped_points(f.ray_vectors(f.maximal()[*target]));
    IntVec pivot;
    if (policy == PivotPolicy::WorstCone) {
      std::optional<Rational> best;
      for (const auto& p : points) {
        Rational s = 0;
        for (const auto& a : p.coefficients) s += a;
        if (!best || s < *best || (s == *best && p.point < pivot)) {
          best = s;
          pivot = p.point;
        }
      }
    } else {
      pivot = std::max_element(points.begin(), points.end(), [](const auto& a, const auto& b) {
                return a.point < b.point;
              })->point;
      pivot = primitive_part(pivot);
    }
    Refinement step = stellar_subdivide(f, pivot);
    for (auto& p : step.parent) p = current.parent[p];
    current = std::move(step);
  }
}

Fan cone_fan(const Fan& fan, const Cone& c) {
  Cone all;
  for (std::size_t i = 0; i < c.rays.size(); ++i) all.rays.push_back(i);
  return Fan(fan.rank(), fan.ray_vectors(c), {all});
}

// ---------------------------------------------------------------------------
// Divisors

bool DivisorPolytope::contains(const IntVec& m) const {
  for (std::size_t i = 0; i < normals.size(); ++i)
    if (dot(m, normals[i]) < offsets[i]) return false;
  return true;
}

DivisorPolytope divisor_polytope(const Fan& fan, const IntVec& divisor) {
  if (divisor.size() != fan.rays().size())
    throw FanError(FanError::Kind::RankMismatch, "divisor needs one coefficient per ray");
  return DivisorPolytope{fan.rays(), negated(divisor)};
}

std::vector<Character> lattice_points(const Fan& fan, const IntVec& divisor) {
  if (!fan.is_complete()) throw FanError(FanError::Kind::NotComplete, "polytope of a non-complete fan is unbounded");
  const auto poly = divisor_polytope(fan, divisor);
  const std::size_t n = fan.rank();
  if (n == 0) return {Character::zero(0)};

  // Bounding box from the feasible vertices of the H-representation.
  std::optional<std::vector<Rational>> lo, hi;
  for_each_subset(poly.normals.size(), n, [&](const Positions& sub) {
    const IntMat rows = select(poly.normals, sub);
    if (determinant(rows) == 0) return;
    IntVec rhs;
    for (auto i : sub) rhs.push_back(poly.offsets[i]);
    const auto m = *solve_combination(transposed(rows, n), rhs);
    for (std::size_t r = 0; r < poly.normals.size(); ++r) {
      Rational s = 0;
      for (std::size_t j = 0; j < n; ++j) s += m[j] * to_rational(poly.normals[r][j]);
      if (s < to_rational(poly.offsets[r])) return;
    }
    if (!lo) {
      lo = m;
      hi = m;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (m[j] < (*lo)[j]) (*lo)[j] = m[j];
      if (m[j] > (*hi)[j]) (*hi)[j] = m[j];
    }
  });
  std::vector<Character> out;
  if (!lo) return out;
  IntVec low(n), high(n);
  for (std::size_t j = 0; j < n; ++j) {
    low[j] = to_int64(ceil_of((*lo)[j]));
    high[j] = to_int64(floor_of((*hi)[j]));
    if (low[j] > high[j]) return out;
  }
  IntVec m = low;
  for (;;) {
    if (poly.contains(m)) out.emplace_back(m);
    std::size_t j = n;
    while (j > 0) {
      --j;
      if (m[j] < high[j]) {
        ++m[j];
        for (std::size_t k = j + 1; k < n; ++k) m[k] = low[k];
        break;
      }
      if (j == 0) return out;
    }
  }
}

Character divisor_vertex(const Fan& fan, const IntVec& divisor, std::size_t maximal_index) {
  const Cone& c = fan.maximal().at(maximal_index);
  const std::size_t n = fan.rank();
  if (fan.dimension(c) != n)
    throw FanError(FanError::Kind::NotFullDimensional, "cone " + to_string(c) + " is not full-dimensional");
  if (n == 0) return Character::zero(0);
  const IntMat v = fan.ray_vectors(c);
  IntVec rhs;
  for (auto i : c.rays) rhs.push_back(-divisor.at(i));
  const auto m = solve_combination(transposed(v, n), rhs);
  if (!m) throw FanError(FanError::Kind::NotCartier, "divisor is not Cartier on cone " + to_string(c));
  IntVec out;
  for (const auto& q : *m) {
    if (q.get_den() != 1) throw FanError(FanError::Kind::NotCartier, "divisor is not Cartier on cone " + to_string(c));
    out.push_back(to_int64(q.get_num()));
  }
  return Character(out);
}

bool is_cartier(const Fan& fan, const IntVec& divisor) {
  try {
    for (std::size_t k = 0; k < fan.maximal().size(); ++k) divisor_vertex(fan, divisor, k);
    return true;
  } catch (const FanError& e) {
    if (e.kind() == FanError::Kind::NotCartier) return false;
    throw;
  }
}

bool is_nef(const Fan& fan, const IntVec& divisor) {
  if (!is_cartier(fan, divisor)) return false;
  const auto poly = divisor_polytope(fan, divisor);
  for (std::size_t k = 0; k < fan.maximal().size(); ++k)
    if (!poly.contains(divisor_vertex(fan, divisor, k).coords())) return false;
  return true;
}

bool is_ample(const Fan& fan, const IntVec& divisor) {
  if (!fan.is_complete() || !is_cartier(fan, divisor)) return false;
  for (std::size_t k = 0; k < fan.maximal().size(); ++k) {
    const Character m = divisor_vertex(fan, divisor, k);
    const auto& own = fan.maximal()[k].rays;
    for (std::size_t r = 0; r < fan.rays().size(); ++r) {
      if (std::binary_search(own.begin(), own.end(), r)) continue;
      if (m.pair(fan.ray(r)) <= -divisor[r]) return false;
    }
  }
  return true;
}

IntVec pullback_divisor(const Fan& original, const Refinement& refinement, const IntVec& divisor) {
  const Fan& fine = refinement.fan;
  IntVec out(fine.rays().size());
  std::vector<bool> done(out.size(), false);
  for (std::size_t k = 0; k < fine.maximal().size(); ++k) {
    const Character m = divisor_vertex(original, divisor, refinement.parent[k]);
    for (auto i : fine.maximal()[k].rays) {
      if (done[i]) continue;
      out[i] = -m.pair(fine.ray(i));
      done[i] = true;
    }
  }
  return out;
}

}  // namespace eqloc
