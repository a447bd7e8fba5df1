#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "eqloc/laurent.hpp"

namespace eqloc {

/// An element of S^{-1}R(T): numerator / prod (1 - e^{-w})^{k_w}.
///
/// Denominator weights are stored in canonical direction (first nonzero
/// coordinate positive).  A factor given in the other direction is rewritten
/// with (1 - e^{lambda}) = -e^{lambda} (1 - e^{-lambda}) and the unit moved
/// into the numerator.  Construction always normalizes: any factor that
/// divides the numerator exactly is cancelled.
class LocalizedClass {
 public:
  using Denominator = std::map<Character, unsigned>;

  explicit LocalizedClass(std::size_t rank = 0) : numerator_(rank) {}
  LocalizedClass(LaurentPoly numerator);  // NOLINT(google-explicit-constructor)
  /// numerator / prod_i (1 - e^{-weights[i]}), weights in any direction.
  LocalizedClass(LaurentPoly numerator, std::span<const Character> weights);

  static LocalizedClass zero(std::size_t rank) { return LocalizedClass(rank); }
  static LocalizedClass one(std::size_t rank) { return LocalizedClass(LaurentPoly::constant(rank, 1)); }

  std::size_t rank() const { return numerator_.rank(); }
  const LaurentPoly& numerator() const { return numerator_; }
  const Denominator& denominator() const { return denominator_; }
  /// Denominator weights with multiplicity, in canonical order.
  std::vector<Character> denominator_weights() const;
  std::size_t denominator_degree() const;
  /// prod (1 - e^{-w}) over the stored denominator.
  LaurentPoly denominator_poly() const;

  bool is_zero() const { return numerator_.is_zero(); }
  /// True when no denominator survives normalization.
  bool is_laurent() const { return denominator_.empty(); }

  LocalizedClass operator-() const;
  LocalizedClass operator+(const LocalizedClass& o) const;
  LocalizedClass operator-(const LocalizedClass& o) const { return *this + (-o); }
  LocalizedClass operator*(const LocalizedClass& o) const;
  LocalizedClass& operator+=(const LocalizedClass& o) { return *this = *this + o; }
  LocalizedClass& operator*=(const LocalizedClass& o) { return *this = *this * o; }

  /// Equality in S^{-1}R(T), decided by cross-multiplication.
  bool operator==(const LocalizedClass& o) const;

  /// Greedy cancellation of denominator factors that divide the numerator.
  void normalize();

 private:
  LaurentPoly numerator_;
  Denominator denominator_;
};

/// psi^j on S^{-1}R(T): numerator exponents scale by j and each factor
/// (1 - e^{-w}) becomes (1 - e^{-j w}).
LocalizedClass adams(unsigned j, const LocalizedClass& x);

/// Tests a/b == c/d as fractions of localized classes: a*d == b*c.
bool ratio_equal(const LocalizedClass& a, const LocalizedClass& b, const LocalizedClass& c,
                 const LocalizedClass& d);

/// Bott element theta^j of the virtual representation sum_i m_i [e^{lambda_i}]:
/// prod_i (1 + e^{lambda_i} + ... + e^{(j-1) lambda_i})^{m_i}.
/// Negative multiplicities are realised as (1 - e^{lambda}) / (1 - e^{j lambda}).
/// Rejects j = 0, and the zero character with negative multiplicity (that
/// would need j inverted).
struct WeightMultiplicity {
  Character weight;
  int multiplicity = 1;
};
LocalizedClass bott(unsigned j, std::span<const WeightMultiplicity> weights, std::size_t rank);

/// Renders "N / ((1-e^{a})(1-e^{b}))", choosing for each factor the sign
/// convention (1 - e^{w}) or (1 - e^{-w}) that gives the simplest numerator.
std::string to_string(const LocalizedClass& x, const Notation& notation);
std::string to_string(const LocalizedClass& x);

}  // namespace eqloc
