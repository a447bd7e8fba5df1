#pragma once

// The regression corpus: complete fans of rank <= 3 with nef divisors, and
// random generators for fans and refinements.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "eqloc/fan.hpp"

namespace eqloc {

struct CorpusEntry {
  std::string name;
  Fan fan;
  std::vector<IntVec> nef_divisors;
};

/// Deterministic list of named fans, including seeded random members.
std::vector<CorpusEntry> regression_corpus();

/// Complete (usually singular) rank-2 fan with 4..6 rays of small norm.
Fan random_complete_fan_2d(std::mt19937& rng, int max_coord = 3);

/// Normal fan of a random lattice polygon with vertices in [-c, c]^2, with
/// the polygon's own (ample) divisor.
struct PolygonFan {
  Fan fan;
  IntVec ample;
};
PolygonFan random_polygon_fan(std::mt19937& rng, int max_coord = 3);

/// Repeated star subdivisions of a simplicial fan at random interior points of its cones.
Refinement random_stellar_refinement(const Fan& fan, std::mt19937& rng, int steps);

/// First ample divisor with coefficients in [0, max_coeff], by increasing total.
std::optional<IntVec> find_ample(const Fan& fan, int max_coeff);

/// D + div(chi^m): coefficients a_rho + <m, v_rho>; the polytope moves by -m.
IntVec shifted_divisor(const Fan& fan, const IntVec& divisor, const IntVec& m);

}  // namespace eqloc
