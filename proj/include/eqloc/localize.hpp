#pragma once

// Fixed-point localization on complete toric varieties: integration of
// fixed-point tuples, equivariant Euler characteristics, GKM and
// piecewise-exponential membership, and dual bases of operational K-theory.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "eqloc/multiplicity.hpp"

namespace eqloc {

/// Values at the fixed points of a fan, indexed by maximal-cone position.
using FixedPointTuple = std::vector<LaurentPoly>;

class TupleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Tuple file: one `cone <id>: <expr>` or `<label>: <expr>` per line, `#` comments.
std::map<std::string, LaurentPoly> parse_tuple(std::string_view text, const Notation& notation);
/// Orders entries keyed "0".."k-1" by maximal cone; missing or extra keys throw.
FixedPointTuple tuple_for_fan(const std::map<std::string, LaurentPoly>& entries, const Fan& fan);
/// Orders entries by the given labels; missing or extra keys throw.
FixedPointTuple tuple_for_labels(const std::map<std::string, LaurentPoly>& entries,
                                 const std::vector<std::string>& labels);

/// The sum of multiplicity times value did not land in R(T).
class NonIntegralResult : public std::runtime_error {
 public:
  explicit NonIntegralResult(LocalizedClass value);
  const LocalizedClass& value() const { return value_; }

 private:
  LocalizedClass value_;
};

/// sum_p em_p * f_p in the localized ring.
LocalizedClass integrate_localized(const std::vector<LocalizedClass>& em, const FixedPointTuple& f);
/// The same sum, required to lie in R(T); throws NonIntegralResult otherwise.
LaurentPoly integrate(const std::vector<LocalizedClass>& em, const FixedPointTuple& f);
LaurentPoly integrate(const Fan& fan, const FixedPointTuple& f);

/// The tuple sigma -> e^{m_sigma} of a Cartier divisor.
FixedPointTuple divisor_tuple(const Fan& fan, const IntVec& divisor);
LaurentPoly euler_char(const Fan& fan, const IntVec& divisor);
/// sum of e^m over the lattice points of the divisor polytope.
LaurentPoly lattice_point_sum(const Fan& fan, const IntVec& divisor);

struct WallViolation {
  Wall wall;
  LaurentPoly difference;
  LaurentPoly remainder;
};
/// Walls (sigma, sigma', chi) where f_sigma - f_sigma' is not divisible by 1 - e^{-chi}.
std::vector<WallViolation> gkm_check(const Fan& fan, const FixedPointTuple& f);

struct FaceViolation {
  std::size_t left = 0;
  std::size_t right = 0;
  Cone face;
};
/// Pairs of maximal cones whose values differ after restriction to their common face.
std::vector<FaceViolation> pexp_check(const Fan& fan, const FixedPointTuple& f, bool walls_only = false);

/// A fixed-point tuple known to be piecewise exponential on its fan.
class PExpClass {
 public:
  /// Throws TupleError when pexp_check fails.
  PExpClass(const Fan& fan, FixedPointTuple values);
  const FixedPointTuple& values() const { return values_; }

 private:
  FixedPointTuple values_;
};

struct AdamsPullbackReport {
  std::vector<FaceViolation> violations;  // of psi^j f
  bool integral = true;                   // integrate(psi^j f) lies in R(T)
  bool pass() const { return violations.empty() && integral; }
};
AdamsPullbackReport adams_pullback_check(const Fan& fan, unsigned j, const PExpClass& f);

/// Determinant of a square matrix over R(T).
LaurentPoly determinant(const std::vector<std::vector<LaurentPoly>>& m);

struct DualBasis {
  /// dual[i] pairs to delta_ij with the orbit closure of basis cone j.
  std::vector<FixedPointTuple> dual;
  /// image[i][j]: coefficient of [O_{V(tau_j)}] in dual[i] applied to O_X.
  std::vector<std::vector<LaurentPoly>> image;
  LaurentPoly image_determinant;
};

class SingularPairing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

DualBasis dual_basis(const Fan& fan, const std::vector<Cone>& basis);

/// sum_p f_p * G_{p,tau}: pairing of a tuple with the orbit closure of tau.
LocalizedClass pairing(const std::vector<LocalizedClass>& orbit_em, const FixedPointTuple& f);

}  // namespace eqloc
