#pragma once

#include <compare>
#include <optional>
#include <string_view>
#include <cstdint>
#include <string>
#include <vector>

#include "eqloc/lattice.hpp"

namespace eqloc {

/// An element of the character lattice M = Z^n, i.e. the exponent of e^lambda.
class Character {
 public:
  Character() = default;
  explicit Character(IntVec coords) : coords_(std::move(coords)) {}

  static Character zero(std::size_t rank) { return Character(IntVec(rank, 0)); }
  static Character unit(std::size_t rank, std::size_t i) {
    IntVec v(rank, 0);
    v.at(i) = 1;
    return Character(std::move(v));
  }

  std::size_t rank() const { return coords_.size(); }
  const IntVec& coords() const { return coords_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  bool is_zero() const { return eqloc::is_zero(coords_); }

  Character operator+(const Character& o) const { return Character(add(coords_, o.coords_)); }
  Character operator-(const Character& o) const { return Character(add(coords_, negated(o.coords_))); }
  Character operator-() const { return Character(negated(coords_)); }
  Character scaled(std::int64_t k) const { return Character(eqloc::scaled(coords_, k)); }

  /// Pairing with a vector of the dual lattice N.
  std::int64_t pair(const IntVec& v) const { return dot(coords_, v); }

  /// True when the first nonzero coordinate is positive.
  bool is_canonical() const { return is_canonical_direction(coords_); }

  auto operator<=>(const Character&) const = default;
  bool operator==(const Character&) const = default;

 private:
  IntVec coords_;
};

/// Names of the coordinate functions u_1..u_n used when reading and writing
/// characters.  Rank-one spherical data uses the single name "t".
class Notation {
 public:
  static Notation standard(std::size_t rank);
  static Notation named(std::vector<std::string> names) { return Notation(std::move(names)); }

  std::size_t rank() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  /// Index of a variable name, accepting u<k> in addition to the configured names.
  std::optional<std::size_t> index_of(std::string_view name) const;

 private:
  explicit Notation(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

/// Renders a linear form such as "2*u1-u2"; the zero character renders as "0".
std::string format_linear(const Character& c, const Notation& notation);
std::string format_linear(const Character& c);

}  // namespace eqloc
