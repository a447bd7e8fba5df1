#include "eqloc/multiplicity.hpp"

#include <algorithm>

namespace eqloc {

namespace {

Fan single_cone_fan(const IntMat& rays) {
  const std::size_t n = rays.empty() ? 0 : rays.front().size();
  Cone all;
  for (std::size_t i = 0; i < rays.size(); ++i) all.rays.push_back(i);
  return Fan(n, rays, {all});
}

}  // namespace

LocalizedClass em_smooth(std::span<const Character> tangent_weights, std::size_t rank) {
  for (const auto& w : tangent_weights)
    if (w.is_zero()) throw std::invalid_argument("degenerate fixed point: zero tangent weight");
  return LocalizedClass(LaurentPoly::constant(rank, 1), tangent_weights);
}

std::vector<Character> tangent_weights(const Fan& fan, const Cone& c) {
  auto m = dual_generators(fan, c);
  for (auto& w : m) w = -w;
  return m;
}

LocalizedClass em_cone(const IntMat& rays, PivotPolicy policy) {
  if (rays.empty()) return LocalizedClass::one(0);
  const std::size_t n = rays.front().size();
  const Fan fan = single_cone_fan(rays);
  if (fan.dimension(fan.maximal()[0]) != n)
    throw FanError(FanError::Kind::NotFullDimensional, "multiplicity needs a full-dimensional cone");
  if (is_smooth(fan, fan.maximal()[0])) return em_smooth(tangent_weights(fan, fan.maximal()[0]), n);
  const Refinement r = resolve(fan, policy);
  LocalizedClass sum(n);
  for (const auto& c : r.fan.maximal()) sum += em_smooth(tangent_weights(r.fan, c), n);
  return sum;
}

LocalizedClass em_point(const Fan& fan, std::size_t maximal_index, PivotPolicy policy) {
  const Cone& c = fan.maximal().at(maximal_index);
  if (c.rays.empty()) return LocalizedClass::one(fan.rank());
  return em_cone(fan.ray_vectors(c), policy);
}

std::vector<LocalizedClass> em_table(const Fan& fan, PivotPolicy policy) {
  std::vector<LocalizedClass> out;
  for (std::size_t k = 0; k < fan.maximal().size(); ++k) out.push_back(em_point(fan, k, policy));
  return out;
}

LocalizedClass em_hilbert(const IntMat& rays) {
  if (rays.empty()) return LocalizedClass::one(0);
  const std::size_t n = rays.front().size();
  if (rays.size() != n) throw FanError(FanError::Kind::NotFullDimensional, "em_hilbert needs a full-dimensional simplicial cone");
  Integer det;
  IntMat dual = scaled_dual_basis(rays, det);
  for (std::size_t i = 0; i < n; ++i) {
    dual[i] = primitive_part(dual[i]);
    if (dot(dual[i], rays[i]) < 0) dual[i] = negated(dual[i]);
  }
  LaurentPoly numerator = LaurentPoly::constant(n, 1);
  for (const auto& p : parallelepiped_points(dual)) numerator.add_term(Character(p.point), 1);
  std::vector<Character> weights;
  for (const auto& w : dual) weights.emplace_back(negated(w));
  return LocalizedClass(numerator, weights);
}

LocalizedClass embed(const LocalizedClass& x, const IntMat& embedding) {
  std::vector<Character> weights;
  for (const auto& w : x.denominator_weights()) {
    IntVec image(embedding.size());
    for (std::size_t i = 0; i < embedding.size(); ++i) image[i] = dot(embedding[i], w.coords());
    weights.emplace_back(image);
  }
  return LocalizedClass(restrict_characters(x.numerator(), embedding), weights);
}

std::vector<LocalizedClass> em_orbit_closure(const Fan& fan, const Cone& tau, PivotPolicy policy) {
  if (!fan.contains(tau)) throw FanError(FanError::Kind::UnknownCone, "cone " + to_string(tau) + " is not in the fan");
  const std::size_t n = fan.rank();
  const IntMat basis = integer_kernel(fan.ray_vectors(tau), n);  // tau-perp in M
  const std::size_t k = basis.size();
  IntMat embedding(n, IntVec(k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) embedding[i][j] = basis[j][i];

  std::vector<LocalizedClass> out;
  const auto containing = fan.maximal_containing(tau);
  for (std::size_t s = 0; s < fan.maximal().size(); ++s) {
    if (std::find(containing.begin(), containing.end(), s) == containing.end()) {
      out.push_back(LocalizedClass::zero(n));
      continue;
    }
    if (k == 0) {
      out.push_back(LocalizedClass::one(n));
      continue;
    }
    // Image of sigma in N / span(tau), coordinatised by pairing with the basis.
    IntMat projected;
    for (auto i : fan.maximal()[s].rays) {
      if (std::binary_search(tau.rays.begin(), tau.rays.end(), i)) continue;
      IntVec p(k);
      for (std::size_t j = 0; j < k; ++j) p[j] = dot(basis[j], fan.ray(i));
      p = primitive_part(p);
      if (std::find(projected.begin(), projected.end(), p) == projected.end()) projected.push_back(p);
    }
    IntMat extreme;
    const auto faces = cone_faces(projected);
    for (std::size_t i = 0; i < projected.size(); ++i)
      if (std::find(faces.begin(), faces.end(), std::vector<std::size_t>{i}) != faces.end())
        extreme.push_back(projected[i]);
    out.push_back(embed(em_cone(extreme, policy), embedding));
  }
  return out;
}

ChowFraction em_chow(const LocalizedClass& em, unsigned degree) {
  return ch_localized(em, degree).leading_term();
}

ChowFraction operator+(const ChowFraction& a, const ChowFraction& b) {
  Polynomial left = a.numerator, right = b.numerator;
  for (const auto& w : b.denominator) left = left.times_linear(w);
  for (const auto& w : a.denominator) right = right.times_linear(w);
  ChowFraction out{left + right, a.denominator};
  out.denominator.insert(out.denominator.end(), b.denominator.begin(), b.denominator.end());
  return out;
}

ChowFraction em_chow_volume(const IntMat& rays) {
  if (rays.empty()) return ChowFraction{Polynomial::constant(0, 1), {}};
  const std::size_t n = rays.front().size();
  if (rank_of(rays, n) != n) throw FanError(FanError::Kind::NotFullDimensional, "volume needs a full-dimensional cone");
  if (rays.size() > n) {
    const Fan fan = single_cone_fan(rays);
    const Refinement t = stellar_triangulate(fan);
    std::optional<ChowFraction> sum;
    for (const auto& c : t.fan.maximal()) {
      ChowFraction piece = em_chow_volume(t.fan.ray_vectors(c));
      sum = sum ? *sum + piece : piece;
    }
    return *sum;
  }
  Integer det;
  const IntMat dual = scaled_dual_basis(rays, det);
  const Integer mult = abs(det);
  // m_i = dual_i / det = w_i / c_i with w_i primitive and c_i = |det| / gcd(dual_i).
  Rational scale = Rational(1) / Rational(mult);
  std::vector<Character> denominator;
  for (const auto& row : dual) {
    const std::int64_t g = gcd_of(row);
    IntVec w = primitive_part(row);
    if (det < 0) w = negated(w);
    scale *= Rational(mult) / Rational(static_cast<long>(g));
    denominator.emplace_back(negated(w));
  }
  return ChowFraction{Polynomial::constant(n, scale), denominator};
}

}  // namespace eqloc
