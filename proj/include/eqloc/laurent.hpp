#pragma once

// The representation ring R(T) = Z[M] as sparse Laurent polynomials with
// arbitrary-precision coefficients, plus the ring operations used by the
// localization code: exact division by (1 - e^{-lambda}), Adams operations,
// lambda_{-1} and pushforward of exponents along a lattice map.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "eqloc/character.hpp"

namespace eqloc {

class RankMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class LaurentPoly {
 public:
  using Terms = std::map<Character, Integer>;

  explicit LaurentPoly(std::size_t rank = 0) : rank_(rank) {}

  static LaurentPoly constant(std::size_t rank, const Integer& c);
  static LaurentPoly monomial(const Character& m, const Integer& c = 1);

  std::size_t rank() const { return rank_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// A single term c * e^m.
  bool is_monomial() const { return terms_.size() == 1; }
  Integer coefficient(const Character& m) const;
  /// Value at the identity of the torus (sum of coefficients).
  Integer augmentation() const;

  /// Adds c * e^m, dropping the term if the coefficient cancels.
  void add_term(const Character& m, const Integer& c);

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly operator+(const LaurentPoly& o) const { return LaurentPoly(*this) += o; }
  LaurentPoly operator-(const LaurentPoly& o) const { return LaurentPoly(*this) -= o; }
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  LaurentPoly scaled(const Integer& k) const;
  /// Multiplication by the unit e^m.
  LaurentPoly shifted(const Character& m) const;
  LaurentPoly pow(unsigned k) const;

  bool operator==(const LaurentPoly& o) const { return rank_ == o.rank_ && terms_ == o.terms_; }

 private:
  void check_rank(const LaurentPoly& o) const;

  std::size_t rank_;
  Terms terms_;
};

/// Outcome of dividing by a single factor (1 - e^{-lambda}).  When the
/// division fails, `remainder` holds the part that could not be peeled off.
struct FactorDivision {
  bool divisible = false;
  LaurentPoly quotient;
  LaurentPoly remainder;
};

/// Exact division by (1 - e^{-lambda}).  Terms are graded by the functional
/// <lambda, .> and peeled from the top grade down.
FactorDivision divide_by_factor(const LaurentPoly& f, const Character& lambda);
std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const Character& lambda);

/// Exact division f / g in Z[M], or nullopt if g does not divide f.
/// Lexicographic long division, bounded by the exponent box that any
/// quotient would have to occupy.
std::optional<LaurentPoly> divide_exact(const LaurentPoly& f, const LaurentPoly& g);

/// psi^j: e^lambda -> e^{j lambda}.
LaurentPoly adams(unsigned j, const LaurentPoly& f);

/// prod_i (1 - e^{-lambda_i}), the K-theory class of the origin in a
/// representation with the given weights.
LaurentPoly lambda_minus_one(std::span<const Character> weights, std::size_t rank);

/// Pushes exponents through the integer matrix q (rows = target coordinates).
LaurentPoly restrict_characters(const LaurentPoly& f, const IntMat& q);

/// Text form "c*e^{a*u1+b*u2} + ..." in ascending lexicographic exponent order.
std::string to_string(const LaurentPoly& f, const Notation& notation);
std::string to_string(const LaurentPoly& f);

class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Parses sums and products of integers, e^{linear form} and parenthesised
/// subexpressions, with non-negative integer powers.  Example:
/// "(1-e^{-u1})*(1+e^{u1-u2}) - 2*e^{2u2}".
LaurentPoly parse_laurent(std::string_view text, const Notation& notation);
LaurentPoly parse_laurent(std::string_view text, std::size_t rank);
Character parse_character(std::string_view text, const Notation& notation);

}  // namespace eqloc
