#pragma once

// Rational polyhedral fans in N = Z^n: validation, face closure, smoothness,
// walls, triangulation, resolution by stellar subdivision, and T-Cartier
// divisors with their polytopes.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqloc/character.hpp"

namespace eqloc {

class FanError : public std::invalid_argument {
 public:
  enum class Kind {
    Syntax,
    RankMismatch,
    NonPrimitiveRay,
    DuplicateRay,
    BadRayIndex,
    RedundantGenerator,
    NonPointedCone,
    OverlappingCones,
    NotComplete,
    NotSimplicial,
    NotSmooth,
    NotFullDimensional,
    NotCartier,
    UnknownCone,
    UnknownDivisor,
  };
  FanError(Kind kind, const std::string& what) : std::invalid_argument(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(FanError::Kind kind);

/// A cone of a fan, as the sorted indices of its generating rays.
struct Cone {
  std::vector<std::size_t> rays;
  auto operator<=>(const Cone&) const = default;
};

std::string to_string(const Cone& c);

struct NamedDivisor {
  std::string name;
  IntVec coefficients;  // one per ray
};

struct Wall {
  Cone facet;
  std::size_t left = 0;   // index into Fan::maximal()
  std::size_t right = 0;  // index into Fan::maximal()
  Character weight;       // primitive, canonical direction, kills the facet
};

class Fan {
 public:
  /// Validates and closes under faces.  Throws FanError.
  Fan(std::size_t rank, IntMat rays, std::vector<Cone> maximal, std::vector<NamedDivisor> divisors = {});

  std::size_t rank() const { return rank_; }
  const IntMat& rays() const { return rays_; }
  const IntVec& ray(std::size_t i) const { return rays_.at(i); }
  /// Maximal cones in input order; their positions are the fixed-point ids.
  const std::vector<Cone>& maximal() const { return maximal_; }
  /// Every cone of the fan, ordered by dimension then lexicographically.
  const std::vector<Cone>& cones() const { return cones_; }
  const std::vector<NamedDivisor>& divisors() const { return divisors_; }
  const NamedDivisor& divisor(std::string_view name) const;
  bool is_complete() const { return complete_; }

  IntMat ray_vectors(const Cone& c) const;
  std::size_t dimension(const Cone& c) const;
  bool contains(const Cone& c) const;
  /// Positions of the maximal cones having c as a face.
  std::vector<std::size_t> maximal_containing(const Cone& c) const;

 private:
  std::size_t rank_;
  IntMat rays_;
  std::vector<Cone> maximal_;
  std::vector<Cone> cones_;
  std::vector<NamedDivisor> divisors_;
  bool complete_ = false;
};

/// Fan file format: `rank n`, `ray ...`, `cone i j ...`, `divisor name a_0 ...`,
/// with `#` comments.
Fan parse_fan(std::string_view text);
std::string write_fan(const Fan& fan);

// ---------------------------------------------------------------------------
// Cone geometry on explicit generator lists.

/// Facets of cone(rays) as subsets of generator positions.  Works inside the
/// linear span of the generators.
std::vector<std::vector<std::size_t>> cone_facets(const IntMat& rays);
/// All faces, including the cone itself and the zero face.
std::vector<std::vector<std::size_t>> cone_faces(const IntMat& rays);
bool cone_is_pointed(const IntMat& rays);

bool is_simplicial(const Fan& fan, const Cone& c);
bool is_smooth(const Fan& fan, const Cone& c);
/// Index of the ray lattice in its saturation.  Simplicial cones only.
Integer multiplicity(const Fan& fan, const Cone& c);

/// The basis m_i of M with <m_i, v_j> = delta_ij.  Full-dimensional smooth cones.
std::vector<Character> dual_generators(const Fan& fan, const Cone& c);

/// Walls of a complete fan; throws NotComplete otherwise.
std::vector<Wall> walls(const Fan& fan);

/// Nonzero lattice points sum a_i v_i (0 <= a_i < 1) of a simplicial cone,
/// with their coefficient vectors.
struct ParallelepipedPoint {
  IntVec point;
  std::vector<Rational> coefficients;
};
std::vector<ParallelepipedPoint> parallelepiped_points(const IntMat& rays);

// ---------------------------------------------------------------------------
// Refinements.

struct Refinement {
  Fan fan;
  /// For each maximal cone of `fan`, the maximal cone of the original fan containing it.
  std::vector<std::size_t> parent;
};

enum class PivotPolicy {
  /// Worst multiplicity first; pivot with least coefficient sum.
  WorstCone,
  /// First singular cone; lexicographically largest pivot.
  FirstCone,
};

/// Pulling triangulation in global ray order; simplicial fans are unchanged.
Refinement stellar_triangulate(const Fan& fan);
/// Star subdivision of a simplicial fan at a primitive vector.
Refinement stellar_subdivide(const Fan& fan, const IntVec& v);
/// Smooth refinement by repeated stellar subdivision (after triangulation).
Refinement resolve(const Fan& fan, PivotPolicy policy = PivotPolicy::WorstCone);

/// The fan consisting of one cone of `fan` and its faces.
Fan cone_fan(const Fan& fan, const Cone& c);

// ---------------------------------------------------------------------------
// Divisors.

struct DivisorPolytope {
  IntMat normals;   // rays v_rho
  IntVec offsets;   // the polytope is {m : <m, v_rho> >= offsets[rho]}, offsets = -a_rho
  bool contains(const IntVec& m) const;
};

DivisorPolytope divisor_polytope(const Fan& fan, const IntVec& divisor);
/// Lattice points in lexicographic order.  Requires a complete fan.
std::vector<Character> lattice_points(const Fan& fan, const IntVec& divisor);
/// m_sigma with <m_sigma, v_rho> = -a_rho on the rays of sigma.
Character divisor_vertex(const Fan& fan, const IntVec& divisor, std::size_t maximal_index);
bool is_cartier(const Fan& fan, const IntVec& divisor);
/// Cartier, and every m_sigma lies in the polytope.
bool is_nef(const Fan& fan, const IntVec& divisor);
/// Cartier with a strictly convex support function: each m_sigma satisfies
/// the inequalities of the rays outside sigma strictly.
bool is_ample(const Fan& fan, const IntVec& divisor);
/// Pullback of a Cartier divisor to a refinement whose ray list extends the original one.
IntVec pullback_divisor(const Fan& original, const Refinement& refinement, const IntVec& divisor);

}  // namespace eqloc
