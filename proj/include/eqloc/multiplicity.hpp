#pragma once

// Equivariant multiplicities at torus-fixed points of toric varieties, on
// the K-theory side (localized classes) and the Chow side (leading terms).

#include <span>
#include <vector>

#include "eqloc/fan.hpp"
#include "eqloc/series.hpp"

namespace eqloc {

inline constexpr unsigned kDefaultDegree = 10;

/// 1 / prod(1 - e^{-lambda_i}) for nonzero tangent weights lambda_i.
LocalizedClass em_smooth(std::span<const Character> tangent_weights, std::size_t rank);

/// Tangent weights at the fixed point of a smooth full-dimensional cone:
/// the negatives of its dual generators.
std::vector<Character> tangent_weights(const Fan& fan, const Cone& c);

/// em^K at the fixed point of a maximal cone.  Singular cones are resolved
/// and the smooth contributions over the cone are summed.
LocalizedClass em_point(const Fan& fan, std::size_t maximal_index, PivotPolicy policy = PivotPolicy::WorstCone);
/// Same, for a full-dimensional cone given by its generators.
LocalizedClass em_cone(const IntMat& rays, PivotPolicy policy = PivotPolicy::WorstCone);

/// em^K at every fixed point, in maximal-cone order.
std::vector<LocalizedClass> em_table(const Fan& fan, PivotPolicy policy = PivotPolicy::WorstCone);

/// Hilbert series of sigma^dual in M for a simplicial full-dimensional cone,
/// as (sum over the dual fundamental parallelepiped) / prod(1 - e^{w_i}).
/// Independent of any resolution.
LocalizedClass em_hilbert(const IntMat& rays);

/// Multiplicities of the orbit closure V(tau) at every fixed point of the
/// fan, over the full torus; zero where the cone does not contain tau.
std::vector<LocalizedClass> em_orbit_closure(const Fan& fan, const Cone& tau,
                                             PivotPolicy policy = PivotPolicy::WorstCone);

/// Pushes a class on a sublattice into M along the columns of `embedding`
/// (an n x k matrix whose columns are the images of the sublattice basis).
LocalizedClass embed(const LocalizedClass& x, const IntMat& embedding);

/// em^A as the leading term of ch(em^K).
ChowFraction em_chow(const LocalizedClass& em, unsigned degree = kDefaultDegree);

/// em^A of a full-dimensional cone from its geometry: for a simplicial cone,
/// 1 / (mult * prod(-m_i)) with m_i the rational dual basis; otherwise the
/// sum over a triangulation.
ChowFraction em_chow_volume(const IntMat& rays);

ChowFraction operator+(const ChowFraction& a, const ChowFraction& b);

}  // namespace eqloc
