#pragma once

// Riemann-Roch identities checked fixed point by fixed point: Todd classes,
// Bott elements and Adams operations, and Grothendieck-Riemann-Roch for the
// map to a point.

#include <optional>
#include <string>
#include <vector>

#include "eqloc/localize.hpp"

namespace eqloc {

struct RRReport {
  std::string label;       // fixed point or divisor being checked
  std::string lhs;         // rendered left-hand side
  std::string rhs;         // rendered right-hand side
  unsigned degree = 0;     // degree compared through (0 for exact identities)
  bool pass = false;
  std::optional<std::string> first_mismatch;
};

/// prod_i lambda_i / (1 - e^{-lambda_i}) through degree d.
TruncatedSeries todd_smooth(const std::vector<Character>& weights, unsigned degree);

/// Smooth cone: todd_smooth(tangent weights) == ch(em^K) * prod(lambda_i).
/// Singular simplicial cone: the leading term of ch(em^K) equals the volume em^A.
RRReport verify_todd_identity(const Fan& fan, std::size_t maximal_index, unsigned degree = kDefaultDegree);

/// Smooth cone: em == bott(j, dual generators) * psi^j(em).
/// Singular cone: em / psi^j(em) equals (sum_i theta_i psi^j(em_i)) / (sum_i psi^j(em_i))
/// over the smooth pieces em_i of a resolution, by cross-multiplication, and
/// psi^j(em) agrees with psi^j of the resolution-free Hilbert series.
RRReport verify_adams_rr_point(const Fan& fan, std::size_t maximal_index, unsigned j);

/// ch(chi(O(D))) == sum_sigma ch(e^{m_sigma}) td_sigma / prod(lambda_sigma)
/// through degree `degree`, on a smooth complete fan.  Both sides are
/// multiplied by the product Q of the distinct weight directions so that
/// every term is a power series.
RRReport verify_grr_pushforward(const Fan& fan, const IntVec& divisor, unsigned degree);

/// ch(psi^j f) == ch(f) with the degree-k part scaled by j^k.
RRReport verify_ch_adams(const LaurentPoly& f, unsigned j, unsigned degree);

/// First differing coefficient through degree d, rendered, or nullopt.
std::optional<std::string> first_mismatch(const TruncatedSeries& a, const TruncatedSeries& b, unsigned degree);

}  // namespace eqloc
