#include "eqloc/rr.hpp"

#include <map>

namespace eqloc {

namespace {

// Coefficients of x / (1 - e^{-x}) = 1 / sum_k (-1)^k x^k / (k+1)!.
std::vector<Rational> todd_coefficients(unsigned degree) {
  std::vector<Rational> f(degree + 1);
  Integer factorial = 1;
  for (unsigned k = 0; k <= degree; ++k) {
    factorial *= k + 1;
    f[k] = Rational(k % 2 == 0 ? 1 : -1) / Rational(factorial);
  }
  std::vector<Rational> inv(degree + 1);
  inv[0] = 1;
  for (unsigned d = 1; d <= degree; ++d) {
    Rational acc = 0;
    for (unsigned e = 1; e <= d; ++e) acc += f[e] * inv[d - e];
    inv[d] = -acc;
  }
  return inv;
}

std::string monomial_label(const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "u" + std::to_string(i + 1);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string point_label(const Fan& fan, std::size_t maximal_index) {
  return "cone " + std::to_string(maximal_index) + " " + to_string(fan.maximal().at(maximal_index));
}

}  // namespace

std::optional<std::string> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b, unsigned degree) {
  for (unsigned d = 0; d <= degree; ++d) {
    const Polynomial diff = a.component(d) - b.component(d);
    if (diff.is_zero()) continue;
    const Monomial& m = diff.terms().begin()->first;
    return "coefficient of " + monomial_label(m) + ": " + a.component(d).coefficient(m).get_str() + " vs " +
           b.component(d).coefficient(m).get_str();
  }
  return std::nullopt;
}

TruncatedSeries todd_smooth(const std::vector<Character>& weights, unsigned degree) {
  if (weights.empty()) return TruncatedSeries::constant(0, degree, 1);
  const auto coeffs = todd_coefficients(degree);
  TruncatedSeries out = TruncatedSeries::constant(weights.front().rank(), degree, 1);
  for (const auto& w : weights) {
    if (w.is_zero()) throw std::invalid_argument("todd_smooth: zero weight");
    out = out * TruncatedSeries::substitute(coeffs, w, degree);
  }
  return out;
}

RRReport verify_todd_identity(const Fan& fan, std::size_t maximal_index, unsigned degree) {
  const Cone& c = fan.maximal().at(maximal_index);
  if (fan.dimension(c) != fan.rank()) throw FanError(FanError::Kind::NotFullDimensional, "cone is not full-dimensional");
  RRReport report;
  report.label = point_label(fan, maximal_index);
  const LocalizedClass em = em_point(fan, maximal_index);
  const Notation notation = Notation::standard(fan.rank());

  if (is_smooth(fan, c)) {
    const auto lambda = tangent_weights(fan, c);
    const TruncatedSeries td = todd_smooth(lambda, degree);
    if (fan.rank() == 0) {
      report.lhs = report.rhs = to_string(td, notation);
      report.degree = degree;
      report.pass = true;
      return report;
    }
    // ch(em) = N / prod(mu) with mu = +-lambda; so ch(em) prod(lambda) = sign * N.
    const LocalizedSeries ch = ch_localized(em, degree);
    std::map<Character, int> balance;
    for (const auto& l : lambda) ++balance[l];
    int sign = 1;
    for (const auto& mu : ch.denominator) {
      if (balance[mu] > 0) {
        --balance[mu];
      } else {
        --balance[-mu];
        sign = -sign;
      }
    }
    const TruncatedSeries rhs = ch.numerator.truncated(degree).scaled(sign);
    report.lhs = to_string(td, notation);
    report.rhs = to_string(rhs, notation);
    report.degree = degree;
    report.first_mismatch = first_mismatch(td, rhs, degree);
    report.pass = !report.first_mismatch;
    return report;
  }

  if (!is_simplicial(fan, c)) throw FanError(FanError::Kind::NotSimplicial, "leading-term check needs a simplicial cone");
  const ChowFraction lead = em_chow(em, degree);
  const ChowFraction volume = em_chow_volume(fan.ray_vectors(c));
  report.lhs = to_string(lead, notation);
  report.rhs = to_string(volume, notation);
  report.degree = degree;
  report.pass = lead == volume;
  if (!report.pass) report.first_mismatch = "leading terms differ";
  return report;
}

RRReport verify_adams_rr_point(const Fan& fan, std::size_t maximal_index, unsigned j) {
  const Cone& c = fan.maximal().at(maximal_index);
  const std::size_t n = fan.rank();
  const Notation notation = Notation::standard(n);
  RRReport report;
  report.label = point_label(fan, maximal_index) + ", j = " + std::to_string(j);
  const LocalizedClass em = em_point(fan, maximal_index);
  const LocalizedClass psi_em = adams(j, em);

  auto theta_of = [&](const Fan& f, const Cone& cone) {
    std::vector<WeightMultiplicity> w;
    for (const auto& m : dual_generators(f, cone)) w.push_back({m, 1});
    return bott(j, w, n);
  };

  if (is_smooth(fan, c)) {
    const LocalizedClass theta = theta_of(fan, c);
    const LocalizedClass rhs = theta * psi_em;
    report.lhs = to_string(em, notation);
    report.rhs = to_string(theta, notation) + " * psi^" + std::to_string(j) + "(em)";
    report.pass = em == rhs;
    if (!report.pass) report.first_mismatch = "em differs from theta * psi^j(em): " + to_string(rhs, notation);
    return report;
  }

  const IntMat rays = fan.ray_vectors(c);
  const Refinement pieces = resolve(Fan(n, rays, {Cone{[&] {
                                       std::vector<std::size_t> idx(rays.size());
                                       for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
                                       return idx;
                                     }()}}));
  LocalizedClass weighted(n), psi_sum(n);
  for (const auto& piece : pieces.fan.maximal()) {
    const LocalizedClass psi_piece = adams(j, em_smooth(tangent_weights(pieces.fan, piece), n));
    weighted += theta_of(pieces.fan, piece) * psi_piece;
    psi_sum += psi_piece;
  }
  report.lhs = to_string(em, notation) + " / psi^" + std::to_string(j) + "(em)";
  report.rhs = "sum theta_i psi^j(em_i) / sum psi^j(em_i) over " + std::to_string(pieces.fan.maximal().size()) +
               " smooth cones";
  const bool ratio = ratio_equal(em, psi_em, weighted, psi_sum);
  const bool hilbert = !is_simplicial(fan, c) || adams(j, em_hilbert(rays)) == psi_em;
  report.pass = ratio && hilbert;
  if (!ratio) report.first_mismatch = "cross-multiplication differs";
  else if (!hilbert) report.first_mismatch = "psi^j(em) differs from psi^j of the Hilbert series";
  return report;
}

RRReport verify_grr_pushforward(const Fan& fan, const IntVec& divisor, unsigned degree) {
  if (!fan.is_complete()) throw FanError(FanError::Kind::NotComplete, "GRR check needs a complete fan");
  for (const auto& c : fan.maximal())
    if (!is_smooth(fan, c)) throw FanError(FanError::Kind::NotSmooth, "GRR check needs a smooth fan");
  const std::size_t n = fan.rank();
  const Notation notation = Notation::standard(n);
  RRReport report;
  report.label = "divisor (" + [&] {
    std::string s;
    for (std::size_t i = 0; i < divisor.size(); ++i) s += (i ? " " : "") + std::to_string(divisor[i]);
    return s;
  }() + ")";
  report.degree = degree;

  const FixedPointTuple values = divisor_tuple(fan, divisor);
  const LaurentPoly chi = integrate(fan, values);

  // Q = product of the distinct weight directions, with their largest multiplicity.
  std::vector<std::vector<Character>> lambdas;
  std::map<Character, unsigned> q;
  for (const auto& c : fan.maximal()) {
    lambdas.push_back(tangent_weights(fan, c));
    std::map<Character, unsigned> here;
    for (const auto& l : lambdas.back()) ++here[l.is_canonical() ? l : -l];
    for (const auto& [w, k] : here) q[w] = std::max(q[w], k);
  }
  unsigned deg_q = 0;
  for (const auto& [w, k] : q) deg_q += k;
  const unsigned top = degree + deg_q;

  TruncatedSeries lhs = chern_character(chi, degree);
  for (const auto& [w, k] : q)
    for (unsigned i = 0; i < k; ++i) lhs = lhs.times_linear(w, true);

  TruncatedSeries rhs(n, top);
  for (std::size_t s = 0; s < lambdas.size(); ++s) {
    const auto& lambda = lambdas[s];
    TruncatedSeries term = exp_series(values[s].terms().begin()->first, degree + n) * todd_smooth(lambda, degree + n);
    // Multiply by Q / prod(lambda): the directions of Q not used by lambda, with signs.
    std::map<Character, unsigned> remaining = q;
    Rational sign = 1;
    for (const auto& l : lambda) {
      const Character w = l.is_canonical() ? l : -l;
      --remaining[w];
      if (w != l) sign = -sign;
    }
    for (const auto& [w, k] : remaining)
      for (unsigned i = 0; i < k; ++i) term = term.times_linear(w, true);
    rhs += term.scaled(sign);
  }

  report.lhs = "Q * ch(" + to_string(chi, notation) + ")";
  report.rhs = "sum over " + std::to_string(lambdas.size()) + " fixed points of Q * ch(e^m) td / prod(lambda)";
  report.first_mismatch = first_mismatch(lhs, rhs, top);
  report.pass = !report.first_mismatch;
  return report;
}

RRReport verify_ch_adams(const LaurentPoly& f, unsigned j, unsigned degree) {
  const Notation notation = Notation::standard(f.rank());
  const TruncatedSeries lhs = chern_character(adams(j, f), degree);
  const TruncatedSeries rhs = chern_character(f, degree).degree_scaled(j);
  RRReport report;
  report.label = to_string(f, notation) + ", j = " + std::to_string(j);
  report.lhs = to_string(lhs, notation);
  report.rhs = to_string(rhs, notation);
  report.degree = degree;
  report.first_mismatch = first_mismatch(lhs, rhs, degree);
  report.pass = !report.first_mismatch;
  return report;
}

}  // namespace eqloc
