#include "eqloc/localize.hpp"

#include <algorithm>
#include <sstream>

namespace eqloc {

// ---------------------------------------------------------------------------
// Tuple files

std::map<std::string, LaurentPoly> parse_tuple(std::string_view text, const Notation& notation) {
  std::map<std::string, LaurentPoly> out;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw TupleError("line " + std::to_string(lineno) + ": expected '<key>: <expr>'");
    std::istringstream ks(line.substr(0, colon));
    std::string first, second, extra;
    ks >> first >> second >> extra;
    std::string key;
    if (first == "cone" && !second.empty() && extra.empty())
      key = second;
    else if (!first.empty() && second.empty())
      key = first;
    else
      throw TupleError("line " + std::to_string(lineno) + ": bad key");
    LaurentPoly value(notation.rank());
    try {
      value = parse_laurent(line.substr(colon + 1), notation);
    } catch (const ParseError& e) {
      throw TupleError("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!out.emplace(key, value).second) throw TupleError("line " + std::to_string(lineno) + ": repeated key " + key);
  }
  return out;
}

FixedPointTuple tuple_for_labels(const std::map<std::string, LaurentPoly>& entries,
                                 const std::vector<std::string>& labels) {
  FixedPointTuple out;
  for (const auto& l : labels) {
    auto it = entries.find(l);
    if (it == entries.end()) throw TupleError("no value for fixed point " + l);
    out.push_back(it->second);
  }
  for (const auto& [k, v] : entries)
    if (std::find(labels.begin(), labels.end(), k) == labels.end()) throw TupleError("unknown fixed point " + k);
  return out;
}

FixedPointTuple tuple_for_fan(const std::map<std::string, LaurentPoly>& entries, const Fan& fan) {
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < fan.maximal().size(); ++k) labels.push_back(std::to_string(k));
  FixedPointTuple out = tuple_for_labels(entries, labels);
  for (const auto& v : out)
    if (v.rank() != fan.rank()) throw TupleError("tuple rank differs from fan rank");
  return out;
}

// ---------------------------------------------------------------------------
// Integration

NonIntegralResult::NonIntegralResult(LocalizedClass value)
    : std::runtime_error("sum does not lie in R(T): " + to_string(value)), value_(std::move(value)) {}

LocalizedClass integrate_localized(const std::vector<LocalizedClass>& em, const FixedPointTuple& f) {
  if (em.size() != f.size()) throw TupleError("tuple has the wrong number of fixed points");
  if (em.empty()) throw TupleError("no fixed points");
  LocalizedClass sum(em.front().rank());
  for (std::size_t p = 0; p < em.size(); ++p)
    if (!f[p].is_zero()) sum += em[p] * LocalizedClass(f[p]);
  return sum;
}

LaurentPoly integrate(const std::vector<LocalizedClass>& em, const FixedPointTuple& f) {
  LocalizedClass sum = integrate_localized(em, f);
  if (!sum.is_laurent()) throw NonIntegralResult(std::move(sum));
  return sum.numerator();
}

LaurentPoly integrate(const Fan& fan, const FixedPointTuple& f) {
  if (!fan.is_complete()) throw FanError(FanError::Kind::NotComplete, "integration needs a complete fan");
  return integrate(em_table(fan), f);
}

FixedPointTuple divisor_tuple(const Fan& fan, const IntVec& divisor) {
  FixedPointTuple out;
  for (std::size_t k = 0; k < fan.maximal().size(); ++k)
    out.push_back(LaurentPoly::monomial(divisor_vertex(fan, divisor, k)));
  return out;
}

LaurentPoly euler_char(const Fan& fan, const IntVec& divisor) { return integrate(fan, divisor_tuple(fan, divisor)); }

LaurentPoly lattice_point_sum(const Fan& fan, const IntVec& divisor) {
  LaurentPoly out(fan.rank());
  for (const auto& m : lattice_points(fan, divisor)) out.add_term(m, 1);
  return out;
}

// ---------------------------------------------------------------------------
// Membership

std::vector<WallViolation> gkm_check(const Fan& fan, const FixedPointTuple& f) {
  if (f.size() != fan.maximal().size()) throw TupleError("tuple has the wrong number of fixed points");
  std::vector<WallViolation> out;
  for (const auto& w : walls(fan)) {
    LaurentPoly diff = f[w.left] - f[w.right];
    auto div = divide_by_factor(diff, w.weight);
    if (!div.divisible) out.push_back({w, std::move(diff), std::move(div.remainder)});
  }
  return out;
}

std::vector<FaceViolation> pexp_check(const Fan& fan, const FixedPointTuple& f, bool walls_only) {
  if (f.size() != fan.maximal().size()) throw TupleError("tuple has the wrong number of fixed points");
  const std::size_t n = fan.rank();
  std::vector<FaceViolation> out;
  for (std::size_t a = 0; a < fan.maximal().size(); ++a) {
    for (std::size_t b = a + 1; b < fan.maximal().size(); ++b) {
      Cone face;
      const auto& ra = fan.maximal()[a].rays;
      const auto& rb = fan.maximal()[b].rays;
      std::set_intersection(ra.begin(), ra.end(), rb.begin(), rb.end(), std::back_inserter(face.rays));
      if (walls_only && fan.dimension(face) + 1 != n) continue;
      // Characters of the face: pair with a basis of span(face) in N.
      const IntMat q = integer_kernel(integer_kernel(fan.ray_vectors(face), n), n);
      if (restrict_characters(f[a], q) != restrict_characters(f[b], q)) out.push_back({a, b, face});
    }
  }
  return out;
}

PExpClass::PExpClass(const Fan& fan, FixedPointTuple values) : values_(std::move(values)) {
  if (!pexp_check(fan, values_).empty()) throw TupleError("tuple is not piecewise exponential on the fan");
}

AdamsPullbackReport adams_pullback_check(const Fan& fan, unsigned j, const PExpClass& f) {
  FixedPointTuple scaled;
  for (const auto& v : f.values()) scaled.push_back(adams(j, v));
  AdamsPullbackReport report;
  report.violations = pexp_check(fan, scaled);
  try {
    integrate(fan, scaled);
  } catch (const NonIntegralResult&) {
    report.integral = false;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Dual bases

LaurentPoly determinant(const std::vector<std::vector<LaurentPoly>>& m) {
  const std::size_t k = m.size();
  if (k == 0) throw std::invalid_argument("determinant of an empty matrix");
  const std::size_t rank = m.front().front().rank();
  if (k == 1) return m[0][0];
  LaurentPoly out(rank);
  for (std::size_t col = 0; col < k; ++col) {
    if (m[0][col].is_zero()) continue;
    std::vector<std::vector<LaurentPoly>> minor;
    for (std::size_t r = 1; r < k; ++r) {
      std::vector<LaurentPoly> row;
      for (std::size_t c = 0; c < k; ++c)
        if (c != col) row.push_back(m[r][c]);
      minor.push_back(std::move(row));
    }
    LaurentPoly term = m[0][col] * determinant(minor);
    out += col % 2 == 0 ? term : -term;
  }
  return out;
}

LocalizedClass pairing(const std::vector<LocalizedClass>& orbit_em, const FixedPointTuple& f) {
  return integrate_localized(orbit_em, f);
}

DualBasis dual_basis(const Fan& fan, const std::vector<Cone>& basis) {
  const std::size_t k = fan.maximal().size();
  const std::size_t n = fan.rank();
  if (basis.size() != k) throw std::invalid_argument("basis size must equal the number of fixed points");
  std::vector<std::vector<LocalizedClass>> columns;
  for (const auto& tau : basis) columns.push_back(em_orbit_closure(fan, tau));

  // H = diag(d) * G with d_p clearing the denominators of row p of G.
  std::vector<std::vector<LaurentPoly>> h(k, std::vector<LaurentPoly>(k, LaurentPoly(n)));
  std::vector<LaurentPoly> d;
  for (std::size_t p = 0; p < k; ++p) {
    std::map<Character, unsigned> common;
    for (std::size_t j = 0; j < k; ++j)
      for (const auto& [w, e] : columns[j][p].denominator()) common[w] = std::max(common[w], e);
    std::vector<Character> weights;
    for (const auto& [w, e] : common) weights.insert(weights.end(), e, w);
    const LaurentPoly dp = lambda_minus_one(weights, n);
    d.push_back(dp);
    for (std::size_t j = 0; j < k; ++j) {
      const LocalizedClass cleared = columns[j][p] * LocalizedClass(dp);
      if (!cleared.is_laurent()) throw std::logic_error("clearing denominators left a fraction");
      h[p][j] = cleared.numerator();
    }
  }
  const LaurentPoly det = determinant(h);
  if (det.is_zero()) throw SingularPairing("pairing matrix is singular");

  // dual[i][p] = cofactor(p, i) * d_p / det(H).
  DualBasis out;
  out.dual.assign(k, FixedPointTuple(k, LaurentPoly(n)));
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t i = 0; i < k; ++i) {
      LaurentPoly cof = LaurentPoly::constant(n, 1);
      if (k > 1) {
        std::vector<std::vector<LaurentPoly>> minor;
        for (std::size_t r = 0; r < k; ++r) {
          if (r == p) continue;
          std::vector<LaurentPoly> row;
          for (std::size_t c = 0; c < k; ++c)
            if (c != i) row.push_back(h[r][c]);
          minor.push_back(std::move(row));
        }
        cof = determinant(minor);
        if ((p + i) % 2 == 1) cof = -cof;
      }
      auto q = divide_exact(cof * d[p], det);
      if (!q) throw SingularPairing("dual class does not have values in R(T)");
      out.dual[i][p] = std::move(*q);
    }
  }

  const auto em = em_table(fan);
  out.image.assign(k, std::vector<LaurentPoly>(k, LaurentPoly(n)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      FixedPointTuple product;
      for (std::size_t p = 0; p < k; ++p) product.push_back(out.dual[i][p] * out.dual[j][p]);
      out.image[i][j] = integrate(em, product);
      out.image[j][i] = out.image[i][j];
    }
  }
  out.image_determinant = determinant(out.image);
  return out;
}

}  // namespace eqloc
