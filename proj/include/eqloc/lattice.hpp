#pragma once

// Exact integer linear algebra on small lattices: determinants, kernels,
// ranks and rational solves.  Vectors are plain int64 coordinate lists;
// intermediate arithmetic runs in GMP so entries never overflow.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace eqloc {

using Integer = mpz_class;
using Rational = mpq_class;

using IntVec = std::vector<std::int64_t>;
using IntMat = std::vector<IntVec>;  // row-major

class LatticeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::int64_t to_int64(const Integer& z);

std::int64_t dot(const IntVec& a, const IntVec& b);
std::int64_t gcd_of(const IntVec& v);
bool is_zero(const IntVec& v);
bool is_primitive(const IntVec& v);
IntVec primitive_part(const IntVec& v);
IntVec negated(const IntVec& v);
IntVec add(const IntVec& a, const IntVec& b);
IntVec scaled(const IntVec& v, std::int64_t k);

/// First nonzero coordinate positive; the zero vector is returned as is.
IntVec canonical_direction(const IntVec& v);
bool is_canonical_direction(const IntVec& v);

/// Determinant of a square matrix (fraction-free Bareiss elimination).
Integer determinant(const IntMat& m);

/// Rank of the span of the given rows.
std::size_t rank_of(const IntMat& rows, std::size_t ncols);

/// Z-basis of the saturated lattice {x in Z^n : <r, x> = 0 for every row r}.
/// Computed by unimodular column reduction, so the basis extends to a basis
/// of Z^n.  With no rows the standard basis is returned.
IntMat integer_kernel(const IntMat& rows, std::size_t n);

/// gcd of all maximal (k x k) minors of a k x n matrix of full row rank.
/// This is the index of the row lattice in its saturation.
Integer maximal_minor_gcd(const IntMat& rows);

/// Solves sum_i a_i * rows[i] = x over Q.  Returns nullopt when x is not in
/// the rational span.  Rows must be linearly independent.
std::optional<std::vector<Rational>> solve_combination(const IntMat& rows, const IntVec& x);

/// For an invertible n x n matrix V (rows v_i), the rows w_i of
/// det(V) * (V^{-1})^T, so that <w_i, v_j> = det(V) * delta_ij.
IntMat scaled_dual_basis(const IntMat& v, Integer& det_out);

}  // namespace eqloc
