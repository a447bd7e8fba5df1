#pragma once

// Truncated power series in u_1..u_n with rational coefficients: the images
// of K-theory classes under the Chern character, and the leading-term
// (Chow-side) parts of localized classes.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqloc/localized.hpp"

namespace eqloc {

using Monomial = IntVec;  // exponent vector, all entries >= 0

class TruncationTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sparse polynomial in u_1..u_n over Q.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  explicit Polynomial(std::size_t rank = 0) : rank_(rank) {}
  static Polynomial constant(std::size_t rank, const Rational& c);
  /// The linear form sum_i lambda_i u_i.
  static Polynomial linear(const Character& lambda);

  std::size_t rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Monomial& m) const;
  void add_term(const Monomial& m, const Rational& c);

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator+(const Polynomial& o) const { return Polynomial(*this) += o; }
  Polynomial operator-(const Polynomial& o) const { return Polynomial(*this) -= o; }
  Polynomial operator*(const Polynomial& o) const;
  Polynomial scaled(const Rational& k) const;
  Polynomial times_linear(const Character& lambda) const;
  /// Exact division by a nonzero linear form, or nullopt.
  std::optional<Polynomial> divided_by_linear(const Character& lambda) const;

  bool operator==(const Polynomial& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }

 private:
  std::size_t rank_;
  Terms terms_;
};

std::string to_string(const Polynomial& p, const Notation& notation);

/// A power series known through total degree `degree()`, stored by
/// homogeneous components.
class TruncatedSeries {
 public:
  TruncatedSeries(std::size_t rank, unsigned degree);
  static TruncatedSeries constant(std::size_t rank, unsigned degree, const Rational& c);
  static TruncatedSeries from_polynomial(const Polynomial& p, unsigned degree);
  /// sum_k coeffs[k] * lambda^k, truncated.
  static TruncatedSeries substitute(const std::vector<Rational>& coeffs, const Character& lambda, unsigned degree);

  std::size_t rank() const { return rank_; }
  unsigned degree() const { return static_cast<unsigned>(components_.size()) - 1; }
  const Polynomial& component(unsigned d) const { return components_.at(d); }
  bool is_zero() const;
  std::optional<unsigned> lowest_degree() const;

  TruncatedSeries operator-() const;
  TruncatedSeries& operator+=(const TruncatedSeries& o);
  TruncatedSeries& operator-=(const TruncatedSeries& o);
  TruncatedSeries operator+(const TruncatedSeries& o) const { return TruncatedSeries(*this) += o; }
  TruncatedSeries operator-(const TruncatedSeries& o) const { return TruncatedSeries(*this) -= o; }
  TruncatedSeries operator*(const TruncatedSeries& o) const;
  TruncatedSeries scaled(const Rational& k) const;
  /// Multiplies by a linear form.  With `extend`, the product is known one
  /// degree further and keeps that component.
  TruncatedSeries times_linear(const Character& lambda, bool extend = false) const;
  /// Keeps components of degree <= d (d may not exceed the current degree).
  TruncatedSeries truncated(unsigned d) const;
  /// Multiplies the degree-k component by j^k.
  TruncatedSeries degree_scaled(unsigned j) const;
  /// Multiplicative inverse; the constant term must be nonzero.
  TruncatedSeries inverse() const;

  /// Equality through the smaller of the two truncation degrees.
  bool operator==(const TruncatedSeries& o) const;

 private:
  void check(const TruncatedSeries& o) const;

  std::size_t rank_;
  std::vector<Polynomial> components_;
};

std::string to_string(const TruncatedSeries& s, const Notation& notation);
std::string to_string(const TruncatedSeries& s);

/// exp(lambda) = sum_k lambda^k / k! through degree d.
TruncatedSeries exp_series(const Character& lambda, unsigned degree);

/// The ring map ch: e^lambda -> exp(lambda).
TruncatedSeries chern_character(const LaurentPoly& f, unsigned degree);

/// numerator / prod of linear forms, with a homogeneous numerator.
struct ChowFraction {
  Polynomial numerator;
  std::vector<Character> denominator;

  int degree() const;
  bool operator==(const ChowFraction& o) const;
};

std::string to_string(const ChowFraction& x, const Notation& notation);
std::string to_string(const ChowFraction& x);

/// ch of a localized class, as numerator / prod(mu_i) where the mu_i are the
/// class's denominator weights.  The numerator is exact through degree
/// `numerator.degree()`, so the quotient is known through degree
/// numerator.degree() - #mu.
struct LocalizedSeries {
  TruncatedSeries numerator;
  std::vector<Character> denominator;

  /// Lowest degree of the quotient.  Throws TruncationTooSmall when the
  /// numerator vanishes through its known degree.
  int valuation() const;
  ChowFraction leading_term() const;
};

/// Expands ch(x) so that the quotient is known through degree `degree`.
/// Each factor 1 - e^{-mu} is written as mu times a unit series; the unit is
/// obtained by exact division of ch(prod(1 - e^{-mu})) by prod(mu) and then
/// inverted.
LocalizedSeries ch_localized(const LocalizedClass& x, unsigned degree);

}  // namespace eqloc
