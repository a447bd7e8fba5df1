#include "eqloc/series.hpp"

#include <algorithm>
#include <numeric>

namespace eqloc {

namespace {

unsigned total_degree(const Monomial& m) {
  return static_cast<unsigned>(std::accumulate(m.begin(), m.end(), std::int64_t{0}));
}

std::string rational_text(const Rational& q) {
  return q.get_den() == 1 ? q.get_num().get_str() : q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string monomial_text(const Monomial& m, const Notation& notation) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += notation.name(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(std::size_t rank, const Rational& c) {
  Polynomial p(rank);
  p.add_term(Monomial(rank, 0), c);
  return p;
}

Polynomial Polynomial::linear(const Character& lambda) {
  Polynomial p(lambda.rank());
  for (std::size_t i = 0; i < lambda.rank(); ++i) {
    Monomial m(lambda.rank(), 0);
    m[i] = 1;
    p.add_term(m, Rational(Integer(std::to_string(lambda[i]))));
  }
  return p;
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != rank_) throw RankMismatch("monomial rank differs from polynomial rank");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.rank_ != rank_) throw RankMismatch("polynomials of different rank");
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.rank_ != rank_) throw RankMismatch("polynomials of different rank");
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.rank_ != rank_) throw RankMismatch("polynomials of different rank");
  Polynomial out(rank_);
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) out.add_term(add(m1, m2), c1 * c2);
  return out;
}

Polynomial Polynomial::scaled(const Rational& k) const {
  Polynomial out(rank_);
  if (k == 0) return out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, c * k);
  return out;
}

Polynomial Polynomial::times_linear(const Character& lambda) const {
  if (lambda.rank() != rank_) throw RankMismatch("linear form of different rank");
  Polynomial out(rank_);
  for (std::size_t i = 0; i < rank_; ++i) {
    if (lambda[i] == 0) continue;
    const Rational li(Integer(std::to_string(lambda[i])));
    for (const auto& [m, c] : terms_) {
      Monomial shifted = m;
      ++shifted[i];
      out.add_term(shifted, c * li);
    }
  }
  return out;
}

std::optional<Polynomial> Polynomial::divided_by_linear(const Character& lambda) const {
  if (lambda.rank() != rank_) throw RankMismatch("linear form of different rank");
  if (lambda.is_zero()) throw std::invalid_argument("division by the zero linear form");
  // In lex order the leading monomial of lambda is u_lead.
  std::size_t lead = 0;
  while (lambda[lead] == 0) ++lead;
  const Rational lead_coef(Integer(std::to_string(lambda[lead])));

  Polynomial rest = *this;
  Polynomial quotient(rank_);
  while (!rest.is_zero()) {
    const auto& [m, c] = *rest.terms_.rbegin();
    if (m[lead] == 0) return std::nullopt;
    Monomial qm = m;
    --qm[lead];
    Polynomial step(rank_);
    step.add_term(qm, c / lead_coef);
    quotient += step;
    rest -= step.times_linear(lambda);
  }
  return quotient;
}

std::string to_string(const Polynomial& p, const Notation& notation) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<Monomial, Rational>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    auto da = total_degree(a.first), db = total_degree(b.first);
    if (da != db) return da < db;
    return a.first > b.first;
  });
  std::string out;
  for (const auto& [m, c] : terms) {
    const bool negative = c < 0;
    const Rational mag = negative ? Rational(-c) : c;
    std::string body;
    const std::string mono = monomial_text(m, notation);
    if (mono.empty())
      body = rational_text(mag);
    else if (mag == 1)
      body = mono;
    else
      body = rational_text(mag) + "*" + mono;
    if (out.empty())
      out = negative ? "-" + body : body;
    else
      out += (negative ? " - " : " + ") + body;
  }
  return out;
}

// ---------------------------------------------------------------------------
// TruncatedSeries

TruncatedSeries::TruncatedSeries(std::size_t rank, unsigned degree)
    : rank_(rank), components_(degree + 1, Polynomial(rank)) {}

TruncatedSeries TruncatedSeries::constant(std::size_t rank, unsigned degree, const Rational& c) {
  TruncatedSeries s(rank, degree);
  s.components_[0] = Polynomial::constant(rank, c);
  return s;
}

TruncatedSeries TruncatedSeries::from_polynomial(const Polynomial& p, unsigned degree) {
  TruncatedSeries s(p.rank(), degree);
  for (const auto& [m, c] : p.terms()) {
    const unsigned d = total_degree(m);
    if (d <= degree) s.components_[d].add_term(m, c);
  }
  return s;
}

TruncatedSeries TruncatedSeries::substitute(const std::vector<Rational>& coeffs, const Character& lambda,
                                            unsigned degree) {
  TruncatedSeries s(lambda.rank(), degree);
  Polynomial power = Polynomial::constant(lambda.rank(), 1);
  for (unsigned k = 0; k <= degree && k < coeffs.size(); ++k) {
    s.components_[k] = power.scaled(coeffs[k]);
    power = power.times_linear(lambda);
  }
  return s;
}

bool TruncatedSeries::is_zero() const {
  return std::all_of(components_.begin(), components_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::optional<unsigned> TruncatedSeries::lowest_degree() const {
  for (unsigned d = 0; d < components_.size(); ++d)
    if (!components_[d].is_zero()) return d;
  return std::nullopt;
}

void TruncatedSeries::check(const TruncatedSeries& o) const {
  if (o.rank_ != rank_) throw RankMismatch("series of different rank");
}

TruncatedSeries TruncatedSeries::operator-() const {
  TruncatedSeries out(*this);
  for (auto& p : out.components_) p = -p;
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& o) {
  check(o);
  if (o.degree() < degree()) components_.resize(o.degree() + 1);
  for (unsigned d = 0; d <= degree(); ++d) components_[d] += o.components_[d];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& o) { return *this += -o; }

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
  check(o);
  const unsigned deg = std::min(degree(), o.degree());
  TruncatedSeries out(rank_, deg);
  for (unsigned a = 0; a <= deg; ++a) {
    if (components_[a].is_zero()) continue;
    for (unsigned b = 0; a + b <= deg; ++b) {
      if (o.components_[b].is_zero()) continue;
      out.components_[a + b] += components_[a] * o.components_[b];
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::scaled(const Rational& k) const {
  TruncatedSeries out(*this);
  for (auto& p : out.components_) p = p.scaled(k);
  return out;
}

TruncatedSeries TruncatedSeries::times_linear(const Character& lambda, bool extend) const {
  TruncatedSeries out(rank_, degree() + (extend ? 1 : 0));
  for (unsigned d = 0; d + 1 <= out.degree(); ++d) out.components_[d + 1] = components_[d].times_linear(lambda);
  return out;
}

TruncatedSeries TruncatedSeries::truncated(unsigned d) const {
  if (d > degree()) throw TruncationTooSmall("cannot extend a truncated series");
  TruncatedSeries out(*this);
  out.components_.resize(d + 1);
  return out;
}

TruncatedSeries TruncatedSeries::degree_scaled(unsigned j) const {
  TruncatedSeries out(*this);
  Rational factor = 1;
  for (auto& p : out.components_) {
    p = p.scaled(factor);
    factor *= j;
  }
  return out;
}

TruncatedSeries TruncatedSeries::inverse() const {
  const Rational c0 = components_[0].coefficient(Monomial(rank_, 0));
  if (c0 == 0) throw std::domain_error("series with zero constant term is not invertible");
  TruncatedSeries inv(rank_, degree());
  const Rational c0_inv = 1 / c0;
  inv.components_[0] = Polynomial::constant(rank_, c0_inv);
  for (unsigned d = 1; d <= degree(); ++d) {
    Polynomial acc(rank_);
    for (unsigned e = 1; e <= d; ++e)
      if (!components_[e].is_zero()) acc += components_[e] * inv.components_[d - e];
    inv.components_[d] = acc.scaled(-c0_inv);
  }
  return inv;
}

bool TruncatedSeries::operator==(const TruncatedSeries& o) const {
  if (o.rank_ != rank_) return false;
  const unsigned deg = std::min(degree(), o.degree());
  for (unsigned d = 0; d <= deg; ++d)
    if (!(components_[d] == o.components_[d])) return false;
  return true;
}

std::string to_string(const TruncatedSeries& s, const Notation& notation) {
  Polynomial all(s.rank());
  for (unsigned d = 0; d <= s.degree(); ++d) all += s.component(d);
  return to_string(all, notation) + " + O(" + std::to_string(s.degree() + 1) + ")";
}

std::string to_string(const TruncatedSeries& s) { return to_string(s, Notation::standard(s.rank())); }

TruncatedSeries exp_series(const Character& lambda, unsigned degree) {
  std::vector<Rational> coeffs(degree + 1);
  Integer factorial = 1;
  for (unsigned k = 0; k <= degree; ++k) {
    if (k > 0) factorial *= k;
    coeffs[k] = Rational(1, 1) / Rational(factorial);
  }
  return TruncatedSeries::substitute(coeffs, lambda, degree);
}

TruncatedSeries chern_character(const LaurentPoly& f, unsigned degree) {
  TruncatedSeries out(f.rank(), degree);
  for (const auto& [m, c] : f.terms()) out += exp_series(m, degree).scaled(Rational(c));
  return out;
}

// ---------------------------------------------------------------------------
// Chow-side fractions

int ChowFraction::degree() const {
  if (numerator.is_zero()) return 0;
  return static_cast<int>(total_degree(numerator.terms().begin()->first)) - static_cast<int>(denominator.size());
}

bool ChowFraction::operator==(const ChowFraction& o) const {
  Polynomial lhs = numerator, rhs = o.numerator;
  for (const auto& w : o.denominator) lhs = lhs.times_linear(w);
  for (const auto& w : denominator) rhs = rhs.times_linear(w);
  return lhs == rhs;
}

std::string to_string(const ChowFraction& x, const Notation& notation) {
  std::string num = to_string(x.numerator, notation);
  if (x.denominator.empty()) return num;
  if (x.numerator.terms().size() > 1) num = "(" + num + ")";
  std::string den;
  for (const auto& w : x.denominator) den += "(" + format_linear(w, notation) + ")";
  return num + " / " + (x.denominator.size() > 1 ? "(" + den + ")" : den);
}

std::string to_string(const ChowFraction& x) { return to_string(x, Notation::standard(x.numerator.rank())); }

int LocalizedSeries::valuation() const {
  auto low = numerator.lowest_degree();
  if (!low) throw TruncationTooSmall("numerator vanishes through degree " + std::to_string(numerator.degree()));
  return static_cast<int>(*low) - static_cast<int>(denominator.size());
}

ChowFraction LocalizedSeries::leading_term() const {
  auto low = numerator.lowest_degree();
  if (!low) throw TruncationTooSmall("numerator vanishes through degree " + std::to_string(numerator.degree()));
  return ChowFraction{numerator.component(*low), denominator};
}

LocalizedSeries ch_localized(const LocalizedClass& x, unsigned degree) {
  const std::size_t rank = x.rank();
  const auto weights = x.denominator_weights();
  const auto k = static_cast<unsigned>(weights.size());

  // ch(prod(1 - e^{-mu})) = prod(mu) * unit; peel off prod(mu) degree by degree.
  const TruncatedSeries ch_den = chern_character(x.denominator_poly(), degree + 2 * k);
  TruncatedSeries unit(rank, degree + k);
  for (unsigned d = 0; d <= degree + 2 * k; ++d) {
    std::optional<Polynomial> part = ch_den.component(d);
    for (const auto& w : weights) {
      if (!part) break;
      part = part->divided_by_linear(w);
    }
    if (!part) throw std::logic_error("ch of the denominator is not divisible by its weights");
    if (d < k) {
      if (!part->is_zero()) throw std::logic_error("ch of the denominator has low-degree terms");
      continue;
    }
    unit = unit + TruncatedSeries::from_polynomial(*part, degree + k);
  }
  LocalizedSeries out{chern_character(x.numerator(), degree + k) * unit.inverse(), weights};
  return out;
}

}  // namespace eqloc
