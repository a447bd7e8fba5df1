#include "eqloc/spherical.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <random>
#include <sstream>

namespace eqloc {

namespace {

Character t_weight(std::int64_t k) { return Character(IntVec{k}); }
// e^{k t}
LaurentPoly et(std::int64_t k, std::int64_t c = 1) { return LaurentPoly::monomial(t_weight(k), c); }
LaurentPoly one() { return LaurentPoly::constant(1, 1); }
LaurentPoly zero() { return LaurentPoly(1); }
// 1 - e^{-k t}
LaurentPoly one_minus(std::int64_t k) { return one() - et(-k); }

CongruenceRelation two_term(const std::vector<std::string>& labels, std::size_t p, std::size_t q, std::int64_t k) {
  std::vector<LaurentPoly> c(labels.size(), zero());
  c[p] = one();
  c[q] = -one();
  return {"f_" + labels[p] + " - f_" + labels[q] + " mod (1-e^{-" + std::to_string(k) + "t})", c, {t_weight(k)}};
}

std::vector<LocalizedClass> smooth_multiplicities(const std::vector<std::vector<Character>>& weights) {
  std::vector<LocalizedClass> out;
  for (const auto& w : weights) out.push_back(em_smooth(w, 1));
  return out;
}

int parse_int(std::string_view s) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw std::invalid_argument("bad integer '" + std::string(s) + "'");
  return v;
}

}  // namespace

SurfaceKind parse_surface_kind(std::string_view text) {
  auto with_n = [&](std::string_view prefix, SurfaceTag tag) -> std::optional<SurfaceKind> {
    if (text.substr(0, prefix.size()) != prefix) return std::nullopt;
    const int n = parse_int(text.substr(prefix.size()));
    if (n < 1) throw std::invalid_argument("surface index must be at least 1");
    return SurfaceKind{tag, n};
  };
  if (text == "point") return {SurfaceTag::Point, 0};
  if (text == "p1") return {SurfaceTag::P1, 0};
  if (text == "pv") return {SurfaceTag::PV, 0};
  if (text == "p1p1") return {SurfaceTag::P1xP1, 0};
  if (auto k = with_n("fn:", SurfaceTag::Fn)) return *k;
  if (auto k = with_n("pn:", SurfaceTag::Pn)) return *k;
  if (auto k = with_n("kn:", SurfaceTag::Kn)) return *k;
  throw std::invalid_argument("unknown surface kind '" + std::string(text) + "'");
}

std::string to_string(const SurfaceKind& kind) {
  switch (kind.tag) {
    case SurfaceTag::Point: return "point";
    case SurfaceTag::P1: return "p1";
    case SurfaceTag::PV: return "pv";
    case SurfaceTag::P1xP1: return "p1p1";
    case SurfaceTag::Fn: return "fn:" + std::to_string(kind.n);
    case SurfaceTag::Pn: return "pn:" + std::to_string(kind.n);
    case SurfaceTag::Kn: return "kn:" + std::to_string(kind.n);
  }
  return "?";
}

Notation surface_notation() { return Notation::named({"t"}); }

SurfaceData surface_data(const SurfaceKind& kind) {
  SurfaceData d;
  d.kind = kind;
  const std::int64_t n = kind.n;
  auto w = [](std::initializer_list<std::int64_t> ks) {
    std::vector<Character> out;
    for (auto k : ks) out.push_back(t_weight(k));
    return out;
  };
  const LaurentPoly a = et(-2);
  const LaurentPoly b = et(-n);
  switch (kind.tag) {
    case SurfaceTag::Point:
      d.fixed_points = {"x"};
      d.tangent_weights = {{}};
      break;
    case SurfaceTag::P1:
      d.fixed_points = {"x", "y"};
      d.tangent_weights = {w({2}), w({-2})};
      d.relations = {two_term(d.fixed_points, 0, 1, 2)};
      break;
    case SurfaceTag::PV:
      d.fixed_points = {"x", "y", "z"};
      d.tangent_weights = {w({2, 4}), w({2, -2}), w({-2, -4})};
      d.relations = {two_term(d.fixed_points, 0, 1, 2), two_term(d.fixed_points, 1, 2, 2),
                     two_term(d.fixed_points, 0, 2, 4),
                     {"f_x - e^{-2t}(1+e^{-2t}) f_y + e^{-6t} f_z mod (1-e^{-2t})(1-e^{-4t})",
                      {one(), -(a * (one() + a)), a * a * a},
                      w({2, 4})}};
      break;
    case SurfaceTag::P1xP1:
      d.fixed_points = {"x", "y", "z", "w"};
      d.tangent_weights = {w({2, 2}), w({2, -2}), w({2, -2}), w({-2, -2})};
      d.relations = {two_term(d.fixed_points, 0, 1, 2), two_term(d.fixed_points, 0, 2, 2),
                     two_term(d.fixed_points, 1, 3, 2), two_term(d.fixed_points, 2, 3, 2),
                     {"f_x - e^{-2t} f_y - e^{-2t} f_z + e^{-4t} f_w mod (1-e^{-2t})^2",
                      {one(), -a, -a, a * a},
                      w({2, 2})}};
      break;
    case SurfaceTag::Fn:
      d.fixed_points = {"x", "y", "z", "w"};
      d.tangent_weights = {w({2, n}), w({-2, -n}), w({2, -n}), w({-2, n})};
      d.relations = {two_term(d.fixed_points, 0, 1, 2), two_term(d.fixed_points, 2, 3, 2),
                     two_term(d.fixed_points, 0, 2, n), two_term(d.fixed_points, 1, 3, n),
                     {"f_x + e^{-(n+2)t} f_y - e^{-nt} f_z - e^{-2t} f_w mod (1-e^{-2t})(1-e^{-nt})",
                      {one(), a * b, -b, -a},
                      w({2, n})}};
      break;
    case SurfaceTag::Pn:
      d.fixed_points = {"x", "y", "z"};
      d.tangent_weights = {w({2, n}), w({-2, -n}), {}};
      d.relations = {two_term(d.fixed_points, 0, 2, n), two_term(d.fixed_points, 1, 2, n),
                     two_term(d.fixed_points, 0, 1, 2),
                     {"f_x + e^{-(n+2)t} f_y - (e^{-2t}+e^{-nt}) f_z mod (1-e^{-nt})(1-e^{-2t})",
                      {one(), a * b, -(a + b)},
                      w({n, 2})}};
      break;
    case SurfaceTag::Kn:
      d.fixed_points = {"x", "y"};
      d.tangent_weights = {{}, {}};
      d.relations = {two_term(d.fixed_points, 0, 1, 2)};
      break;
  }
  if (kind.tag == SurfaceTag::Pn) {
    // The contracted point z collects the two fixed points of the contracted section.
    std::vector<LocalizedClass> em{em_smooth(w({2, n}), 1), em_smooth(w({-2, -n}), 1),
                                   em_smooth(w({2, -n}), 1) + em_smooth(w({-2, n}), 1)};
    d.multiplicities = em;
  } else if (kind.tag != SurfaceTag::Kn) {
    d.multiplicities = smooth_multiplicities(d.tangent_weights);
  }
  return d;
}

std::vector<RelationViolation> check_relations(const std::vector<CongruenceRelation>& relations,
                                               const FixedPointTuple& f) {
  std::vector<RelationViolation> out;
  for (const auto& r : relations) {
    if (r.coefficients.size() != f.size()) throw TupleError("tuple has the wrong number of fixed points");
    LaurentPoly sum(f.empty() ? 1 : f.front().rank());
    for (std::size_t p = 0; p < f.size(); ++p)
      if (!r.coefficients[p].is_zero()) sum += r.coefficients[p] * f[p];
    std::optional<LaurentPoly> rest = sum;
    for (const auto& m : r.modulus) {
      rest = divide_exact(*rest, m);
      if (!rest) break;
    }
    if (!rest) out.push_back({r.name, std::move(sum)});
  }
  return out;
}

std::vector<RelationViolation> check_relations(const SurfaceKind& kind, const FixedPointTuple& f) {
  return check_relations(surface_data(kind).relations, f);
}

SurfaceBasis standard_basis(const SurfaceKind& kind) {
  const std::int64_t n = kind.n;
  const LaurentPoly a = et(-2);
  const LaurentPoly b = et(-n);
  const LaurentPoly o = zero();
  switch (kind.tag) {
    case SurfaceTag::Point:
      return {{{one()}}, {0}};
    case SurfaceTag::P1:
    case SurfaceTag::Kn:
      return {{{one(), one()}, {o, one_minus(2)}}, {0, 1}};
    case SurfaceTag::PV:
      return {{{one(), one(), one()}, {o, one_minus(2), one_minus(4)}, {o, o, one_minus(2) * one_minus(4)}},
              {0, 1, 2}};
    case SurfaceTag::P1xP1:
      return {{{one(), one(), one(), one()},
               {o, one_minus(2), o, one_minus(2)},
               {o, o, one_minus(2), one_minus(2)},
               {o, o, o, one_minus(2) * one_minus(2)}},
              {0, 1, 2, 3}};
    case SurfaceTag::Fn:
      return {{{one(), one(), one(), one()},
               {o, one_minus(2), o, one_minus(2)},
               {o, o, one_minus(n), -(b * one_minus(n))},
               {o, o, o, one_minus(2) * one_minus(n)}},
              {0, 1, 2, 3}};
    case SurfaceTag::Pn:
      return {{{one(), one(), one()}, {o, one_minus(2 * n), one_minus(n)}, {o, one_minus(2) * one_minus(n), o}},
              {0, 2, 1}};
  }
  return {};
}

MembershipResult membership(const SurfaceKind& kind, const FixedPointTuple& f) {
  const SurfaceBasis basis = standard_basis(kind);
  if (f.size() != basis.elements.front().size()) throw TupleError("tuple has the wrong number of fixed points");
  MembershipResult out;
  out.residual = f;
  for (std::size_t k = 0; k < basis.elements.size(); ++k) {
    const std::size_t p = basis.pivots[k];
    const auto& e = basis.elements[k];
    auto c = divide_exact(out.residual[p], e[p]);
    if (!c) {
      out.stuck_at = p;
      out.coefficients.clear();
      return out;
    }
    for (std::size_t q = 0; q < f.size(); ++q)
      if (!e[q].is_zero()) out.residual[q] -= *c * e[q];
    out.coefficients.push_back(std::move(*c));
  }
  out.member = std::all_of(out.residual.begin(), out.residual.end(), [](const LaurentPoly& x) { return x.is_zero(); });
  if (!out.member) out.coefficients.clear();
  return out;
}

namespace {

bool within(const LaurentPoly& f, int window) {
  for (const auto& [m, c] : f.terms())
    if (m.coords()[0] < -window || m.coords()[0] > window) return false;
  return true;
}

std::string render(const FixedPointTuple& f) {
  std::string out = "(";
  for (std::size_t p = 0; p < f.size(); ++p) out += (p ? ", " : "") + to_string(f[p], surface_notation());
  return out + ")";
}

}  // namespace

OracleSweep membership_oracle_sweep(const SurfaceKind& kind, int window, std::size_t samples, unsigned seed) {
  const SurfaceBasis basis = standard_basis(kind);
  const std::size_t m = basis.elements.front().size();
  const std::int64_t n = kind.n;
  std::vector<LaurentPoly> factors{one(), one_minus(2), one_minus(4)};
  if (n > 0) factors.push_back(one_minus(n));
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coeff(-2, 2), small_exp(-3, 3), any_exp(-window, window), terms(0, 2),
      mode(0, 3), slot(0, static_cast<int>(m) - 1), factor(0, static_cast<int>(factors.size()) - 1);
  auto random_poly = [&](int max_terms, bool wide) {
    LaurentPoly f(1);
    const int k = max_terms < 0 ? terms(rng) : max_terms;
    for (int i = 0; i < k; ++i) f.add_term(t_weight(wide ? any_exp(rng) : small_exp(rng)), coeff(rng));
    return f;
  };

  OracleSweep out;
  while (out.samples < samples) {
    FixedPointTuple f(m, zero());
    std::optional<std::vector<LaurentPoly>> known;
    switch (mode(rng)) {
      case 0:
      case 1: {
        std::vector<LaurentPoly> g;
        for (std::size_t k = 0; k < basis.elements.size(); ++k) g.push_back(random_poly(-1, false));
        for (std::size_t k = 0; k < g.size(); ++k)
          for (std::size_t p = 0; p < m; ++p) f[p] += g[k] * basis.elements[k][p];
        if (out.samples % 2 == 0) {
          known = g;
        } else {
          const int c = coeff(rng);
          f[slot(rng)].add_term(t_weight(any_exp(rng)), c == 0 ? 1 : c);
        }
        break;
      }
      case 2: {
        const LaurentPoly shared = random_poly(1, false);
        for (std::size_t p = 0; p < m; ++p) f[p] = shared + random_poly(1, false) * factors[factor(rng)] * factors[factor(rng)];
        break;
      }
      default:
        for (std::size_t p = 0; p < m; ++p) f[p] = random_poly(-1, true);
    }
    if (!std::all_of(f.begin(), f.end(), [&](const LaurentPoly& x) { return within(x, window); })) continue;
    ++out.samples;
    const bool relations = check_relations(kind, f).empty();
    const MembershipResult r = membership(kind, f);
    bool ok = relations == r.member;
    if (known) ok = ok && r.member && r.coefficients == *known;
    if (r.member) {
      FixedPointTuple rebuilt(m, zero());
      for (std::size_t k = 0; k < r.coefficients.size(); ++k)
        for (std::size_t p = 0; p < m; ++p) rebuilt[p] += r.coefficients[k] * basis.elements[k][p];
      ok = ok && rebuilt == f;
    }
    if (relations) ++out.members;
    if (!ok) {
      ++out.disagreements;
      if (out.examples.size() < 5)
        out.examples.push_back(render(f) + ": relations " + (relations ? "pass" : "fail") + ", membership " +
                               (r.member ? "yes" : "no"));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Skeletons

Notation SphericalSkeleton::notation() const { return rank == 1 ? surface_notation() : Notation::standard(rank); }

std::size_t SphericalSkeleton::index_of(const std::string& label) const {
  auto it = std::find(points.begin(), points.end(), label);
  if (it == points.end()) throw SkeletonError("unknown fixed point '" + label + "'");
  return static_cast<std::size_t>(it - points.begin());
}

SphericalSkeleton parse_skeleton(std::string_view text) {
  SphericalSkeleton sk;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::vector<std::string> tok;
    for (std::string w; words >> w;) tok.push_back(w);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& msg) {
      throw SkeletonError("line " + std::to_string(line_no) + ": " + msg);
    };
    try {
      if (tok[0] == "rank") {
        if (seen_content || tok.size() != 2) fail("`rank n` must come first");
        const int r = parse_int(tok[1]);
        if (r < 1) fail("rank must be positive");
        sk.rank = static_cast<std::size_t>(r);
      } else if (tok[0] == "point") {
        if (tok.size() != 2) fail("expected `point <label>`");
        if (std::find(sk.points.begin(), sk.points.end(), tok[1]) != sk.points.end()) fail("duplicate point");
        sk.points.push_back(tok[1]);
      } else if (tok[0] == "curve") {
        if (tok.size() != 5 || tok[3] != "weight") fail("expected `curve <p> <q> weight <char>`");
        sk.index_of(tok[1]);
        sk.index_of(tok[2]);
        const Character chi = parse_character(tok[4], sk.notation());
        if (chi.is_zero()) fail("curve weight must be nonzero");
        sk.curves.push_back({tok[1], tok[2], chi});
      } else if (tok[0] == "surface") {
        if (tok.size() < 6 || tok[2] != "root" || tok[4] != "points") fail("expected `surface <kind> root <char> points ...`");
        SkeletonSurface s{parse_surface_kind(tok[1]), parse_character(tok[3], sk.notation()), {}};
        if (s.root.is_zero()) fail("root must be nonzero");
        for (std::size_t i = 5; i < tok.size(); ++i) {
          sk.index_of(tok[i]);
          s.points.push_back(tok[i]);
        }
        if (s.points.size() != surface_data(s.kind).fixed_points.size())
          fail("surface " + to_string(s.kind) + " needs " + std::to_string(surface_data(s.kind).fixed_points.size()) +
               " points");
        sk.surfaces.push_back(std::move(s));
      } else {
        fail("unknown keyword '" + tok[0] + "'");
      }
    } catch (const SkeletonError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
    seen_content = true;
  }
  if (sk.points.empty()) throw SkeletonError("skeleton has no fixed points");
  return sk;
}

namespace {

// e^{k t} -> e^{k chi / 2}; k chi must be even.
Character half_scaled(std::int64_t k, const Character& chi) {
  IntVec v = scaled(chi.coords(), k);
  for (auto& x : v) {
    if (x % 2 != 0) throw HalfWeightNotIntegral("chi/2 is not a character of T");
    x /= 2;
  }
  return Character(v);
}

LaurentPoly substitute_root(const LaurentPoly& f, const Character& chi) {
  LaurentPoly out(chi.rank());
  for (const auto& [m, c] : f.terms()) out.add_term(half_scaled(m.coords()[0], chi), c);
  return out;
}

}  // namespace

std::vector<CongruenceRelation> assemble_system(const SphericalSkeleton& sk) {
  const std::size_t k = sk.points.size();
  const Notation notation = sk.notation();
  std::vector<CongruenceRelation> out;
  for (const auto& c : sk.curves) {
    if (c.weight.rank() != sk.rank) throw SkeletonError("curve weight has the wrong rank");
    std::vector<LaurentPoly> coeff(k, LaurentPoly(sk.rank));
    coeff[sk.index_of(c.p)] += LaurentPoly::constant(sk.rank, 1);
    coeff[sk.index_of(c.q)] -= LaurentPoly::constant(sk.rank, 1);
    out.push_back({"curve " + c.p + " " + c.q + ": f_" + c.p + " - f_" + c.q + " mod (1-e^{-(" +
                       format_linear(c.weight, notation) + ")})",
                   std::move(coeff),
                   {c.weight}});
  }
  for (const auto& s : sk.surfaces) {
    if (s.root.rank() != sk.rank) throw SkeletonError("root has the wrong rank");
    const bool odd = (s.kind.tag == SurfaceTag::Fn || s.kind.tag == SurfaceTag::Pn) && s.kind.n % 2 != 0;
    if (odd) half_scaled(1, s.root);
    const SurfaceData data = surface_data(s.kind);
    std::string where;
    for (const auto& p : s.points) where += " " + p;
    for (const auto& r : data.relations) {
      std::vector<LaurentPoly> coeff(k, LaurentPoly(sk.rank));
      for (std::size_t i = 0; i < s.points.size(); ++i)
        coeff[sk.index_of(s.points[i])] += substitute_root(r.coefficients[i], s.root);
      std::vector<Character> modulus;
      for (const auto& m : r.modulus) modulus.push_back(half_scaled(m.coords()[0], s.root));
      out.push_back({to_string(s.kind) + " (root " + format_linear(s.root, notation) + ";" + where + "): " + r.name,
                     std::move(coeff), std::move(modulus)});
    }
  }
  return out;
}

std::vector<RelationViolation> check_skeleton(const SphericalSkeleton& sk, const FixedPointTuple& f) {
  if (f.size() != sk.points.size()) throw TupleError("tuple has the wrong number of fixed points");
  return check_relations(assemble_system(sk), f);
}

}  // namespace eqloc
