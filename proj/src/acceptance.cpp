#include "eqloc/acceptance.hpp"

#include <chrono>
#include <functional>
#include <random>
#include <sstream>

#include "eqloc/corpus.hpp"
#include "eqloc/rr.hpp"
#include "eqloc/spherical.hpp"

namespace eqloc {

namespace {

using Status = CriterionResult::Status;

Character C(std::initializer_list<std::int64_t> v) { return Character(IntVec(v)); }

// num / prod (1 - e^{x}) over the given exponents x.
LocalizedClass over(const char* num, std::vector<Character> exps) {
  std::vector<Character> weights;
  for (const auto& x : exps) weights.push_back(-x);
  return LocalizedClass(parse_laurent(num, 2), weights);
}

const CorpusEntry& entry(const std::vector<CorpusEntry>& corpus, const std::string& name) {
  for (const auto& e : corpus)
    if (e.name == name) return e;
  throw std::logic_error("corpus has no " + name);
}

// Collects failures; the first few are kept for the report.
struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::vector<std::string> witnesses;
  void record(bool ok, const std::string& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (witnesses.size() < 3) witnesses.push_back(what);
  }
  Status status() const { return failures == 0 ? Status::Pass : Status::Fail; }
  std::string summary(const std::string& unit) const {
    std::string s = std::to_string(checks - failures) + "/" + std::to_string(checks) + " " + unit;
    for (const auto& w : witnesses) s += "; failed: " + w;
    return s;
  }
};

CriterionResult table_criterion(const Fan& p112) {
  CriterionResult r{"1", "P(1,1,2) multiplicity table", Status::Fail, "", 0, 1};
  const auto x = em_table(p112);
  const auto d = em_orbit_closure(p112, Cone{{2}});
  const auto p = em_orbit_closure(p112, p112.maximal()[1]);
  const std::vector<LocalizedClass> expected{
      over("1", {C({1, 0}), C({0, 1})}), over("1 + e^{u1-u2}", {C({2, -1}), C({0, -1})}),
      over("1", {C({-1, 0}), C({-2, 1})}), LocalizedClass::zero(2), over("1", {C({2, -1})}),
      over("1", {C({-2, 1})}), LocalizedClass::zero(2), LocalizedClass::one(2), LocalizedClass::zero(2)};
  const std::vector<LocalizedClass> got{x[0], x[1], x[2], d[0], d[1], d[2], p[0], p[1], p[2]};
  Tally t;
  const char* rows[] = {"X", "D", "p"};
  for (std::size_t i = 0; i < 9; ++i)
    t.record(got[i] == expected[i], std::string("em(") + rows[i / 3] + ") at point " + std::to_string(i % 3) + " = " +
                                        to_string(got[i]));
  r.status = t.status();
  r.detail = t.summary("entries equal");
  return r;
}

std::vector<CriterionResult> dual_basis_criteria(const Fan& p112) {
  CriterionResult expansions{"2a", "P(1,1,2) dual basis image expansions", Status::Fail, "", 0, 1};
  CriterionResult det{"2b", "P(1,1,2) image determinant e^{-u1+2*u2} + e^{u2}", Status::Fail, "", 0, 1};
  const auto start = std::chrono::steady_clock::now();
  const DualBasis db = dual_basis(p112, {Cone{}, Cone{{2}}, p112.maximal()[1]});
  const std::vector<std::vector<const char*>> expected{
      {"(1 - e^{u1})*(1 - e^{u2})", "e^{u1} - e^{u1+u2}", "e^{u2}"},
      {"e^{u1} - e^{u1+u2}", "e^{-u1+u2} + e^{u1+u2} + e^{u2} - e^{u1}", "-(e^{u2} + e^{-u1+u2})"},
      {"e^{u2}", "-(e^{u2} + e^{-u1+u2})", "e^{-u1+u2}"}};
  Tally t;
  const char* names[] = {"O_X", "O_D", "O_p"};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      t.record(db.image[i][j] == parse_laurent(expected[i][j], 2),
               std::string("[") + names[i] + "]^dual coefficient of [" + names[j] + "] = " + to_string(db.image[i][j]));
  expansions.status = t.status();
  expansions.detail = t.summary("coefficients equal");

  const LaurentPoly printed = parse_laurent("e^{-u1+2*u2} + e^{u2}", 2);
  det.status = db.image_determinant == printed ? Status::Pass : Status::Fail;
  det.detail = "computed " + to_string(db.image_determinant);
  if (db.image_determinant == -printed) det.detail += ", the printed value times the unit -1";
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expansions.seconds = det.seconds = s;
  return {expansions, det};
}

CriterionResult brion_criterion(const std::vector<CorpusEntry>& corpus) {
  CriterionResult r{"3", "Brion oracle on the corpus", Status::Fail, "", 0, 60};
  Tally t;
  bool shape = corpus.size() >= 20;
  for (const auto& e : corpus) {
    shape = shape && e.nef_divisors.size() >= 3 && e.fan.rank() <= 3;
    for (const auto& d : e.nef_divisors)
      t.record(is_nef(e.fan, d) && euler_char(e.fan, d) == lattice_point_sum(e.fan, d), e.name);
  }
  r.status = shape ? t.status() : Status::Fail;
  r.detail = std::to_string(corpus.size()) + " fans, " + t.summary("divisors agree");
  return r;
}

CriterionResult completeness_criterion(const std::vector<CorpusEntry>& corpus) {
  CriterionResult r{"4", "sum of em^K over fixed points is 1", Status::Fail, "", 0, 0};
  Tally t;
  for (const auto& e : corpus) {
    LocalizedClass sum(e.fan.rank());
    for (const auto& em : em_table(e.fan)) sum += em;
    t.record(sum == LocalizedClass::one(e.fan.rank()), e.name);
  }
  r.status = t.status();
  r.detail = t.summary("fans");
  return r;
}

CriterionResult todd_criterion(const std::vector<CorpusEntry>& corpus) {
  CriterionResult r{"5", "Todd identity (smooth, degree 10) and leading terms (singular)", Status::Fail, "", 0, 0};
  Tally smooth, singular;
  for (const auto& e : corpus)
    for (std::size_t p = 0; p < e.fan.maximal().size(); ++p) {
      const Cone& c = e.fan.maximal()[p];
      if (!is_simplicial(e.fan, c)) continue;
      const RRReport rep = verify_todd_identity(e.fan, p, kDefaultDegree);
      (is_smooth(e.fan, c) ? smooth : singular).record(rep.pass, e.name + " " + rep.label);
    }
  r.status = smooth.failures + singular.failures == 0 ? Status::Pass : Status::Fail;
  r.detail = smooth.summary("smooth points") + ", " + singular.summary("singular points");
  return r;
}

CriterionResult adams_criterion(const std::vector<CorpusEntry>& corpus) {
  CriterionResult r{"6", "Adams-Riemann-Roch at fixed points; Bott and Adams properties", Status::Fail, "", 0, 0};
  Tally points;
  for (const auto& e : corpus)
    for (std::size_t p = 0; p < e.fan.maximal().size(); ++p)
      for (unsigned j : {1u, 2u, 3u, 5u}) {
        const RRReport rep = verify_adams_rr_point(e.fan, p, j);
        points.record(rep.pass, e.name + " " + rep.label);
      }

  Tally props;
  std::mt19937 rng(1234);
  std::uniform_int_distribution<int> jd(1, 6), nd(0, 6), ed(-3, 3), cd(-2, 2), rank_d(1, 3);
  for (int trial = 0; trial < 1000; ++trial) {
    const unsigned j = static_cast<unsigned>(jd(rng)), k = static_cast<unsigned>(jd(rng));
    const std::size_t rank = static_cast<std::size_t>(rank_d(rng));
    auto random_char = [&] {
      IntVec v(rank);
      for (auto& x : v) x = ed(rng);
      return Character(v);
    };
    // theta^j of n copies of the trivial representation, and its augmentation in general.
    const int n = nd(rng);
    const WeightMultiplicity trivial{Character::zero(rank), n};
    const LocalizedClass th = bott(j, std::span<const WeightMultiplicity>(&trivial, 1), rank);
    Integer power = 1;
    for (int i = 0; i < n; ++i) power *= j;
    std::vector<WeightMultiplicity> ws{{random_char(), nd(rng) % 3}, {random_char(), nd(rng) % 3}};
    int total = 0;
    for (const auto& w : ws) total += w.multiplicity;
    Integer power_total = 1;
    for (int i = 0; i < total; ++i) power_total *= j;
    const LocalizedClass general = bott(j, ws, rank);
    props.record(th.is_laurent() && th.numerator() == LaurentPoly::constant(rank, 1) * LaurentPoly::constant(rank, power) &&
                     general.is_laurent() && general.numerator().augmentation() == power_total,
                 "theta^" + std::to_string(j) + " rank " + std::to_string(n));

    // psi^j psi^k = psi^{jk} on a random localized class.
    LaurentPoly f(rank);
    for (int i = 0; i < 3; ++i) f.add_term(random_char(), cd(rng));
    std::vector<Character> den;
    for (int i = nd(rng) % 3; i > 0; --i) {
      Character c = random_char();
      if (!c.is_zero()) den.push_back(c);
    }
    const LocalizedClass x(f, den);
    props.record(adams(j, adams(k, x)) == adams(j * k, x),
                 "psi^" + std::to_string(j) + " psi^" + std::to_string(k) + " on " + to_string(x));
  }
  r.status = points.failures + props.failures == 0 ? Status::Pass : Status::Fail;
  r.detail = points.summary("point checks (j = 1, 2, 3, 5)") + ", " + props.summary("property checks");
  return r;
}

CriterionResult grr_criterion(const std::vector<CorpusEntry>& corpus) {
  CriterionResult r{"7", "GRR for the map to a point, degree 8", Status::Fail, "", 0, 0};
  Tally t;
  std::size_t fans = 0;
  for (const auto& e : corpus) {
    bool smooth = true;
    for (const auto& c : e.fan.maximal()) smooth = smooth && is_smooth(e.fan, c);
    if (!smooth) continue;
    ++fans;
    for (const auto& d : e.nef_divisors) {
      const RRReport rep = verify_grr_pushforward(e.fan, d, 8);
      t.record(rep.pass, e.name + " " + rep.label + " " + rep.first_mismatch.value_or(""));
    }
  }
  r.status = fans > 0 ? t.status() : Status::Fail;
  r.detail = std::to_string(fans) + " smooth fans, " + t.summary("divisors");
  return r;
}

CriterionResult spherical_criterion() {
  CriterionResult r{"8", "spherical catalogue", Status::Fail, "", 0, 120};
  const Notation tn = surface_notation();
  auto t = [&](const char* s) { return parse_laurent(s, tn); };
  const SurfaceKind pv = parse_surface_kind("pv");
  Tally triples;
  triples.record(check_relations(pv, {t("1"), t("1"), t("1")}).empty(), "(1,1,1)");
  triples.record(check_relations(pv, {t("0"), t("1 - e^{-2*t}"), t("1 - e^{-4*t}")}).empty(),
                 "(0, 1-e^{-2t}, 1-e^{-4t})");
  triples.record(check_relations(pv, {t("0"), t("0"), t("(1 - e^{-2*t})*(1 - e^{-4*t})")}).empty(),
                 "(0, 0, (1-e^{-2t})(1-e^{-4t}))");
  const auto bad = check_relations(pv, {t("0"), t("0"), t("1 - e^{-4*t}")});
  const std::string last = surface_data(pv).relations.back().name;
  triples.record(bad.size() == 1 && bad[0].name == last && !membership(pv, {t("0"), t("0"), t("1 - e^{-4*t}")}).member,
                 "(0, 0, 1-e^{-4t}) fails exactly the three-term relation");

  Tally bases;
  for (const char* k : {"pv", "p1p1", "fn:1", "fn:2", "fn:3", "pn:1", "pn:2", "pn:3", "kn:1", "kn:2"}) {
    const SurfaceKind kind = parse_surface_kind(k);
    const SurfaceBasis b = standard_basis(kind);
    for (std::size_t i = 0; i < b.elements.size(); ++i) {
      const MembershipResult m = membership(kind, b.elements[i]);
      bool unit = m.member;
      for (std::size_t j = 0; unit && j < m.coefficients.size(); ++j)
        unit = m.coefficients[j] == LaurentPoly::constant(1, i == j ? 1 : 0);
      bases.record(check_relations(kind, b.elements[i]).empty() && unit, std::string(k) + " element " + std::to_string(i));
    }
  }

  Tally sweep;
  std::size_t samples = 0, members = 0;
  unsigned seed = 100;
  for (const char* k : {"pv", "p1p1", "fn:1", "fn:2", "fn:3"}) {
    const OracleSweep s = membership_oracle_sweep(parse_surface_kind(k), 8, 2500, seed++);
    samples += s.samples;
    members += s.members;
    sweep.record(s.disagreements == 0 && s.members > 0 && s.members < s.samples,
                 std::string(k) + (s.examples.empty() ? "" : " " + s.examples.front()));
  }
  r.status = triples.failures + bases.failures + sweep.failures == 0 && samples >= 10000 ? Status::Pass : Status::Fail;
  r.detail = triples.summary("P(V) triple checks") + ", " + bases.summary("basis restrictions") + ", " +
             sweep.summary("kinds") + " over " + std::to_string(samples) + " window tuples (" +
             std::to_string(members) + " members)";
  return r;
}

CriterionResult resolution_criterion(const std::vector<CorpusEntry>& corpus) {
  CriterionResult r{"9", "resolution independence of em^K", Status::Fail, "", 0, 0};
  Tally t;
  for (const auto& e : corpus)
    for (std::size_t p = 0; p < e.fan.maximal().size(); ++p) {
      const Cone& c = e.fan.maximal()[p];
      if (is_smooth(e.fan, c)) continue;
      const LocalizedClass a = em_point(e.fan, p, PivotPolicy::WorstCone);
      const LocalizedClass b = em_point(e.fan, p, PivotPolicy::FirstCone);
      bool ok = a == b;
      if (is_simplicial(e.fan, c)) ok = ok && a == em_hilbert(e.fan.ray_vectors(c));
      t.record(ok, e.name + " " + to_string(c));
    }
  r.status = t.checks > 0 ? t.status() : Status::Fail;
  r.detail = t.summary("singular cones");
  return r;
}

}  // namespace

const std::vector<KnownDiscrepancy>& known_discrepancies() {
  static const std::vector<KnownDiscrepancy> list{
      {"2b", "the determinant of the displayed image matrix is -(e^{-u1+2*u2} + e^{u2}); the printed value "
             "differs from it by the unit -1"}};
  return list;
}

std::vector<CriterionResult> run_acceptance(std::ostream* log) {
  std::vector<CriterionResult> out;
  auto timed = [&](const std::function<std::vector<CriterionResult>()>& f) {
    const auto start = std::chrono::steady_clock::now();
    auto results = f();
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    for (auto& r : results) {
      if (r.seconds == 0) r.seconds = s;
      if (r.limit_seconds > 0 && r.seconds > r.limit_seconds && r.status == Status::Pass) {
        r.status = Status::Fail;
        r.detail += "; exceeded the runtime bound";
      }
      if (log) *log << "  finished " << r.id << "\n" << std::flush;
      out.push_back(std::move(r));
    }
  };
  const auto corpus = regression_corpus();
  const Fan& p112 = entry(corpus, "P(1,1,2)").fan;
  timed([&] { return std::vector<CriterionResult>{table_criterion(p112)}; });
  timed([&] { return dual_basis_criteria(p112); });
  timed([&] { return std::vector<CriterionResult>{brion_criterion(corpus)}; });
  timed([&] { return std::vector<CriterionResult>{completeness_criterion(corpus)}; });
  timed([&] { return std::vector<CriterionResult>{todd_criterion(corpus)}; });
  timed([&] { return std::vector<CriterionResult>{adams_criterion(corpus)}; });
  timed([&] { return std::vector<CriterionResult>{grr_criterion(corpus)}; });
  timed([&] { return std::vector<CriterionResult>{spherical_criterion()}; });
  timed([&] { return std::vector<CriterionResult>{resolution_criterion(corpus)}; });
  out.push_back({"10", "non-surjectivity conclusion and Grothendieck transformation existence", Status::Excluded,
                 "out of scope: depends on external Chow computations and existence statements", 0, 0});
  return out;
}

void print_acceptance(const std::vector<CriterionResult>& results, std::ostream& out, bool timings) {
  for (const auto& r : results) {
    const char* tag = r.status == Status::Pass ? "PASS" : r.status == Status::Fail ? "FAIL" : "EXCLUDED";
    out << "[" << tag << "] " << r.id << " " << r.title;
    if (r.limit_seconds > 0) out << " (bound " << r.limit_seconds << " s)";
    out << ": " << r.detail;
    if (timings && r.status != Status::Excluded) {
      std::ostringstream s;
      s.precision(3);
      s << std::fixed << r.seconds;
      out << " [" << s.str() << " s]";
    }
    out << "\n";
    for (const auto& k : known_discrepancies())
      if (k.id == r.id && r.status == Status::Fail) out << "       known discrepancy: " << k.reason << "\n";
  }
}

bool acceptance_as_expected(const std::vector<CriterionResult>& results) {
  for (const auto& r : results) {
    bool known = false;
    for (const auto& k : known_discrepancies()) known = known || k.id == r.id;
    if (known ? r.status != Status::Fail : r.status == Status::Fail) return false;
  }
  return true;
}

}  // namespace eqloc
