#pragma once

// Congruence descriptions of equivariant operational K-theory for the
// rank-one fixed-point surfaces of spherical varieties, membership by
// triangular reduction, and assembly of global relation systems from
// skeleton data.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqloc/localize.hpp"

namespace eqloc {

enum class SurfaceTag { Point, P1, PV, P1xP1, Fn, Pn, Kn };

struct SurfaceKind {
  SurfaceTag tag = SurfaceTag::Point;
  int n = 0;  // for Fn, Pn, Kn
  bool operator==(const SurfaceKind&) const = default;
};

/// "point", "p1", "pv", "p1p1", "fn:N", "pn:N", "kn:N".
SurfaceKind parse_surface_kind(std::string_view text);
std::string to_string(const SurfaceKind& kind);

/// sum_p coefficients[p] * f_p is divisible by prod (1 - e^{-modulus[i]}).
struct CongruenceRelation {
  std::string name;
  std::vector<LaurentPoly> coefficients;
  std::vector<Character> modulus;
};

/// Data over the rank-one lattice spanned by t (rendered with the name "t").
struct SurfaceData {
  SurfaceKind kind;
  std::vector<std::string> fixed_points;
  /// Per fixed point; empty at singular or non-normal points.
  std::vector<std::vector<Character>> tangent_weights;
  std::vector<CongruenceRelation> relations;
  /// em^K per fixed point, when the surface is normal.
  std::optional<std::vector<LocalizedClass>> multiplicities;
};

SurfaceData surface_data(const SurfaceKind& kind);

/// Notation for the rank-one lattice: the variable t.
Notation surface_notation();

struct RelationViolation {
  std::string name;
  LaurentPoly combination;  // sum_p coefficient_p f_p
};

std::vector<RelationViolation> check_relations(const std::vector<CongruenceRelation>& relations,
                                               const FixedPointTuple& f);
std::vector<RelationViolation> check_relations(const SurfaceKind& kind, const FixedPointTuple& f);

/// Triangular basis of restrictions of structure sheaves, with the order in
/// which each element's pivot entry is reduced.
struct SurfaceBasis {
  std::vector<FixedPointTuple> elements;
  std::vector<std::size_t> pivots;  // pivots[k]: fixed point eliminated by elements[k]
};
SurfaceBasis standard_basis(const SurfaceKind& kind);

struct MembershipResult {
  bool member = false;
  std::vector<LaurentPoly> coefficients;  // over the standard basis, when member
  FixedPointTuple residual;               // what was left when reduction stopped
  std::optional<std::size_t> stuck_at;    // fixed point whose entry did not divide
};
MembershipResult membership(const SurfaceKind& kind, const FixedPointTuple& f);

/// Sampled comparison of membership and check_relations on tuples whose
/// entries have exponents in [-window, window] (units of t) and small
/// coefficients.  Samples mix known R(D')-combinations of the standard
/// basis (whose coefficients must be recovered exactly), combinations with
/// one entry perturbed, products of random entries with the relation moduli,
/// and unstructured tuples.
struct OracleSweep {
  std::size_t samples = 0;
  std::size_t members = 0;       // tuples accepted by check_relations
  std::size_t disagreements = 0; // membership != check_relations, or wrong coefficients
  std::vector<std::string> examples;  // first few disagreements, rendered
};
OracleSweep membership_oracle_sweep(const SurfaceKind& kind, int window, std::size_t samples, unsigned seed);

// ---------------------------------------------------------------------------
// Skeletons.

class HalfWeightNotIntegral : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SkeletonError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SkeletonCurve {
  std::string p;
  std::string q;
  Character weight;
};

struct SkeletonSurface {
  SurfaceKind kind;
  Character root;
  std::vector<std::string> points;  // in the surface's fixed-point order
};

/// Fixed points, T-invariant curves and rank-one surface components.
/// Components meeting at a fixed point share its label, which identifies
/// their values there.
struct SphericalSkeleton {
  std::size_t rank = 1;
  std::vector<std::string> points;
  std::vector<SkeletonCurve> curves;
  std::vector<SkeletonSurface> surfaces;

  Notation notation() const;
  std::size_t index_of(const std::string& label) const;
};

/// Lines: optional `rank n` first (default 1, variable t; otherwise u1..un),
/// `point <label>`, `curve <p> <q> weight <char>`,
/// `surface <kind> root <char> points <labels...>`, `#` comments.
SphericalSkeleton parse_skeleton(std::string_view text);

/// Curve relations, plus the relations of each surface component with
/// e^{-kt} replaced by e^{-k chi / 2}.  Throws HalfWeightNotIntegral when an
/// odd n needs chi/2 and chi is not divisible by 2.
std::vector<CongruenceRelation> assemble_system(const SphericalSkeleton& sk);

std::vector<RelationViolation> check_skeleton(const SphericalSkeleton& sk, const FixedPointTuple& f);

}  // namespace eqloc
