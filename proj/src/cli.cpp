#include "eqloc/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "eqloc/acceptance.hpp"
#include "eqloc/rr.hpp"
#include "eqloc/spherical.hpp"

namespace eqloc {

namespace {

using Json = nlohmann::ordered_json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string fan, tuple, skeleton, divisor, cones, kind, format = "text";
  std::optional<std::size_t> cone;
  std::optional<unsigned> adams;
  unsigned degree = kDefaultDegree;
  bool oracle = false;
};

// Text and structured renderings of one command's result.
struct Report {
  std::ostringstream text;
  Json data = Json::object();
  int status = kExitOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Fan load_fan(const Options& o) {
  if (o.fan.empty()) throw InputError("--fan is required");
  return parse_fan(read_file(o.fan));
}

FixedPointTuple load_fan_tuple(const Options& o, const Fan& fan) {
  if (o.tuple.empty()) throw InputError("--tuple is required");
  return tuple_for_fan(parse_tuple(read_file(o.tuple), Notation::standard(fan.rank())), fan);
}

std::string str(const LaurentPoly& f, const Notation& n) { return to_string(f, n); }

std::string point_name(const Fan& fan, std::size_t k) { return "point " + std::to_string(k) + " " + to_string(fan.maximal()[k]); }

Json cone_json(const Cone& c) { return Json(c.rays); }

std::vector<std::size_t> parse_id_list(const std::string& s) {
  std::vector<std::size_t> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t pos = 0;
      const unsigned long v = std::stoul(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad cone id '" + item + "' in --cones");
    }
  }
  return out;
}

Cone cone_by_id(const Fan& fan, std::size_t id) {
  if (id >= fan.cones().size())
    throw InputError("cone id " + std::to_string(id) + " out of range (fan has " + std::to_string(fan.cones().size()) +
                     " cones)");
  return fan.cones()[id];
}

const IntVec& divisor_of(const Fan& fan, const Options& o) {
  if (o.divisor.empty()) throw InputError("--divisor is required");
  return fan.divisor(o.divisor).coefficients;
}

std::vector<std::size_t> selected_points(const Fan& fan, const Options& o) {
  std::vector<std::size_t> out;
  if (o.cone) {
    if (*o.cone >= fan.maximal().size()) throw InputError("--cone must index a maximal cone");
    out.push_back(*o.cone);
  } else {
    for (std::size_t k = 0; k < fan.maximal().size(); ++k) out.push_back(k);
  }
  return out;
}

void list_cones(const Fan& fan, Report& r) {
  r.text << "cones:";
  Json ids = Json::array();
  for (std::size_t i = 0; i < fan.cones().size(); ++i) {
    r.text << " " << i << "=" << to_string(fan.cones()[i]);
    ids.push_back(cone_json(fan.cones()[i]));
  }
  r.text << "\n";
  r.data["cones"] = ids;
}

// ---------------------------------------------------------------------------
// Commands

void cmd_emult(const Options& o, Report& r) {
  const Fan fan = load_fan(o);
  const Notation n = Notation::standard(fan.rank());
  // Default: the orbit closure of every cone, the whole variety first.
  std::vector<std::size_t> ids = parse_id_list(o.cones);
  if (o.cones.empty())
    for (std::size_t i = 0; i < fan.cones().size(); ++i) ids.push_back(i);
  const auto points = selected_points(fan, o);
  list_cones(fan, r);
  Json classes = Json::array();
  for (auto id : ids) {
    const Cone tau = cone_by_id(fan, id);
    const auto em = em_orbit_closure(fan, tau);
    r.text << "em^K(V(" << to_string(tau) << ")):\n";
    Json values = Json::array();
    for (auto k : points) {
      r.text << "  " << point_name(fan, k) << ": " << to_string(em[k], n) << "\n";
      values.push_back({{"point", k}, {"cone", cone_json(fan.maximal()[k])}, {"value", to_string(em[k], n)}});
    }
    classes.push_back({{"orbit_closure", cone_json(tau)}, {"values", values}});
  }
  r.data["multiplicities"] = classes;
  if (o.oracle) {
    Json checks = Json::array();
    r.text << "oracle (Hilbert series of the dual cone):\n";
    for (auto k : points) {
      const Cone& c = fan.maximal()[k];
      if (!is_simplicial(fan, c)) {
        r.text << "  " << point_name(fan, k) << ": not simplicial, skipped\n";
        checks.push_back({{"point", k}, {"agrees", nullptr}});
        continue;
      }
      const bool agree = em_hilbert(fan.ray_vectors(c)) == em_point(fan, k);
      r.text << "  " << point_name(fan, k) << ": " << (agree ? "agrees" : "DISAGREES") << "\n";
      checks.push_back({{"point", k}, {"agrees", agree}});
      if (!agree) r.status = kExitMathFailure;
    }
    r.data["oracle"] = checks;
  }
}

void cmd_euler(const Options& o, Report& r) {
  const Fan fan = load_fan(o);
  const Notation n = Notation::standard(fan.rank());
  const IntVec& d = divisor_of(fan, o);
  const LaurentPoly chi = euler_char(fan, d);
  r.text << "chi(O(" << o.divisor << ")) = " << str(chi, n) << "\n";
  r.data["divisor"] = o.divisor;
  r.data["euler_characteristic"] = str(chi, n);
  if (o.oracle) {
    const LaurentPoly points = lattice_point_sum(fan, d);
    const bool agree = points == chi;
    r.text << "oracle: lattice-point sum = " << str(points, n) << " (" << (agree ? "agrees" : "DISAGREES") << ")\n";
    r.data["oracle"] = {{"lattice_point_sum", str(points, n)}, {"agrees", agree}};
    if (!agree) r.status = kExitMathFailure;
  }
}

void cmd_integrate(const Options& o, Report& r) {
  const Fan fan = load_fan(o);
  const Notation n = Notation::standard(fan.rank());
  const LaurentPoly value = integrate(fan, load_fan_tuple(o, fan));
  r.text << "integral = " << str(value, n) << "\n";
  r.data["integral"] = str(value, n);
}

void cmd_gkm(const Options& o, Report& r) {
  const Fan fan = load_fan(o);
  const Notation n = Notation::standard(fan.rank());
  const auto v = gkm_check(fan, load_fan_tuple(o, fan));
  Json list = Json::array();
  for (const auto& w : v) {
    r.text << "violated wall " << to_string(w.wall.facet) << " between points " << w.wall.left << " and "
           << w.wall.right << " (weight " << format_linear(w.wall.weight, n) << "): difference " << str(w.difference, n)
           << ", remainder " << str(w.remainder, n) << "\n";
    list.push_back({{"wall", cone_json(w.wall.facet)},
                    {"left", w.wall.left},
                    {"right", w.wall.right},
                    {"weight", format_linear(w.wall.weight, n)},
                    {"difference", str(w.difference, n)},
                    {"remainder", str(w.remainder, n)}});
  }
  r.text << (v.empty() ? "pass\n" : "fail\n");
  r.data["pass"] = v.empty();
  r.data["violations"] = list;
  if (!v.empty()) r.status = kExitMathFailure;
}

void cmd_pexp(const Options& o, Report& r) {
  const Fan fan = load_fan(o);
  const auto v = pexp_check(fan, load_fan_tuple(o, fan));
  Json list = Json::array();
  for (const auto& f : v) {
    r.text << "points " << f.left << " and " << f.right << " disagree on face " << to_string(f.face) << "\n";
    list.push_back({{"left", f.left}, {"right", f.right}, {"face", cone_json(f.face)}});
  }
  r.text << (v.empty() ? "pass\n" : "fail\n");
  r.data["pass"] = v.empty();
  r.data["violations"] = list;
  if (!v.empty()) r.status = kExitMathFailure;
}

void cmd_dual_basis(const Options& o, Report& r) {
  const Fan fan = load_fan(o);
  const Notation n = Notation::standard(fan.rank());
  if (o.cones.empty()) throw InputError("--cones is required");
  std::vector<Cone> basis;
  for (auto id : parse_id_list(o.cones)) basis.push_back(cone_by_id(fan, id));
  const DualBasis db = dual_basis(fan, basis);
  list_cones(fan, r);
  Json duals = Json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::string name = "[O_V(" + to_string(basis[i]) + ")]";
    r.text << name << "^dual:\n  restrictions:";
    Json values = Json::array();
    for (std::size_t p = 0; p < fan.maximal().size(); ++p) {
      r.text << (p ? "; " : " ") << str(db.dual[i][p], n);
      values.push_back(str(db.dual[i][p], n));
    }
    r.text << "\n  image:";
    Json image = Json::array();
    for (std::size_t j = 0; j < basis.size(); ++j) {
      r.text << (j ? " + " : " ") << "(" << str(db.image[i][j], n) << ")[O_V(" << to_string(basis[j]) << ")]";
      image.push_back(str(db.image[i][j], n));
    }
    r.text << "\n";
    duals.push_back({{"cone", cone_json(basis[i])}, {"restrictions", values}, {"image", image}});
  }
  r.text << "determinant: " << str(db.image_determinant, n) << "\n";
  r.data["dual_basis"] = duals;
  r.data["determinant"] = str(db.image_determinant, n);
}

Json rr_json(const RRReport& rep) {
  Json j = {{"label", rep.label}, {"lhs", rep.lhs}, {"rhs", rep.rhs}, {"degree", rep.degree}, {"pass", rep.pass}};
  j["first_mismatch"] = rep.first_mismatch ? Json(*rep.first_mismatch) : Json(nullptr);
  return j;
}

void record_rr(const RRReport& rep, Report& r, Json& list) {
  // Series sides are long; text output shows them only on failure.
  r.text << (rep.pass ? "pass " : "FAIL ") << rep.label << "\n";
  if (!rep.pass) {
    r.text << "  lhs: " << rep.lhs << "\n  rhs: " << rep.rhs << "\n";
    if (rep.first_mismatch) r.text << "  first mismatch: " << *rep.first_mismatch << "\n";
  }
  list.push_back(rr_json(rep));
  if (!rep.pass) r.status = kExitMathFailure;
}

void cmd_rr(const Options& o, Report& r) {
  const Fan fan = load_fan(o);
  Json list = Json::array();
  if (!o.divisor.empty()) {
    r.data["check"] = "grr";
    record_rr(verify_grr_pushforward(fan, divisor_of(fan, o), o.degree), r, list);
  } else if (o.adams) {
    r.data["check"] = "adams";
    for (auto k : selected_points(fan, o)) record_rr(verify_adams_rr_point(fan, k, *o.adams), r, list);
  } else {
    r.data["check"] = "todd";
    for (auto k : selected_points(fan, o)) {
      if (!is_simplicial(fan, fan.maximal()[k])) {
        r.text << "skip " << point_name(fan, k) << ": not simplicial\n";
        continue;
      }
      record_rr(verify_todd_identity(fan, k, o.degree), r, list);
    }
  }
  r.data["reports"] = list;
}

void cmd_adams(const Options& o, Report& r) {
  const Fan fan = load_fan(o);
  if (!o.adams) throw InputError("--adams is required");
  const FixedPointTuple f = o.tuple.empty() ? divisor_tuple(fan, divisor_of(fan, o)) : load_fan_tuple(o, fan);
  const AdamsPullbackReport rep = adams_pullback_check(fan, *o.adams, PExpClass(fan, f));
  r.text << "psi^" << *o.adams << " tuple piecewise exponential: " << (rep.violations.empty() ? "yes" : "no") << "\n";
  r.text << "integral in R(T): " << (rep.integral ? "yes" : "no") << "\n";
  r.text << (rep.pass() ? "pass\n" : "fail\n");
  r.data["j"] = *o.adams;
  r.data["piecewise_exponential"] = rep.violations.empty();
  r.data["integral"] = rep.integral;
  r.data["pass"] = rep.pass();
  if (!rep.pass()) r.status = kExitMathFailure;
}

void report_relations(const std::vector<RelationViolation>& v, const Notation& n, Report& r) {
  Json list = Json::array();
  for (const auto& x : v) {
    r.text << "violated: " << x.name << " (combination " << str(x.combination, n) << ")\n";
    list.push_back({{"relation", x.name}, {"combination", str(x.combination, n)}});
  }
  r.data["relations_pass"] = v.empty();
  r.data["violations"] = list;
  if (!v.empty()) r.status = kExitMathFailure;
}

void cmd_spherical(const Options& o, Report& r) {
  if (o.tuple.empty()) throw InputError("--tuple is required");
  if (o.kind.empty() == o.skeleton.empty()) throw InputError("give exactly one of --kind and --skeleton");
  if (!o.kind.empty()) {
    const SurfaceKind kind = parse_surface_kind(o.kind);
    const SurfaceData data = surface_data(kind);
    const Notation n = surface_notation();
    const FixedPointTuple f = tuple_for_labels(parse_tuple(read_file(o.tuple), n), data.fixed_points);
    r.data["kind"] = to_string(kind);
    const auto v = check_relations(kind, f);
    report_relations(v, n, r);
    const MembershipResult m = membership(kind, f);
    if (m.member) {
      r.text << "member; coefficients over the standard basis:";
      Json c = Json::array();
      for (const auto& x : m.coefficients) {
        r.text << " [" << str(x, n) << "]";
        c.push_back(str(x, n));
      }
      r.text << "\n";
      r.data["membership"] = {{"member", true}, {"coefficients", c}};
    } else {
      const std::string at = m.stuck_at ? data.fixed_points[*m.stuck_at] : std::string("?");
      r.text << "not a member; reduction stopped at " << at << "\n";
      r.data["membership"] = {{"member", false}, {"stuck_at", at}};
      r.status = kExitMathFailure;
    }
    if (v.empty() != m.member) r.text << "warning: relations and membership disagree\n";
  } else {
    const SphericalSkeleton sk = parse_skeleton(read_file(o.skeleton));
    const Notation n = sk.notation();
    const FixedPointTuple f = tuple_for_labels(parse_tuple(read_file(o.tuple), n), sk.points);
    const auto system = assemble_system(sk);
    r.text << system.size() << " relations\n";
    r.data["relations"] = system.size();
    report_relations(check_relations(system, f), n, r);
  }
  r.text << (r.status == kExitOk ? "pass\n" : "fail\n");
}

void cmd_resolve(const Options& o, Report& r) {
  const Fan fan = load_fan(o);
  const Refinement res = resolve(fan);
  r.text << write_fan(res.fan);
  r.text << "# parents:";
  for (auto p : res.parent) r.text << " " << p;
  r.text << "\n";
  r.data["fan"] = write_fan(res.fan);
  r.data["parent"] = res.parent;
  if (o.oracle) {
    bool agree = true;
    for (std::size_t k = 0; k < fan.maximal().size(); ++k)
      agree = agree && em_point(fan, k, PivotPolicy::WorstCone) == em_point(fan, k, PivotPolicy::FirstCone);
    r.text << "# oracle: multiplicities under both pivot policies " << (agree ? "agree" : "DISAGREE") << "\n";
    r.data["oracle"] = {{"policies_agree", agree}};
    if (!agree) r.status = kExitMathFailure;
  }
}

void cmd_corpus(const Options&, Report& r) {
  const auto results = run_acceptance();
  std::ostringstream lines;
  print_acceptance(results, lines);
  r.text << lines.str();
  Json list = Json::array();
  for (const auto& c : results) {
    const char* s = c.status == CriterionResult::Status::Pass   ? "pass"
                    : c.status == CriterionResult::Status::Fail ? "fail"
                                                                : "excluded";
    list.push_back({{"id", c.id}, {"title", c.title}, {"status", s}, {"detail", c.detail}});
  }
  const bool expected = acceptance_as_expected(results);
  r.text << (expected ? "all outcomes as expected\n" : "unexpected outcome\n");
  r.data["criteria"] = list;
  r.data["as_expected"] = expected;
  if (!expected) r.status = kExitMathFailure;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equivariant localization on toric and spherical varieties", "eqloc"};
  app.require_subcommand(1);
  Options o;
  using Handler = void (*)(const Options&, Report&);
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto add = [&](const std::string& name, const std::string& help, Handler h) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
    commands.emplace_back(sub, h);
    return sub;
  };
  auto fan_opt = [&](CLI::App* s) { s->add_option("--fan", o.fan, "fan file")->required(); };

  auto* emult = add("emult", "equivariant multiplicities at fixed points", cmd_emult);
  fan_opt(emult);
  emult->add_option("--cone", o.cone, "restrict to one maximal cone");
  emult->add_option("--cones", o.cones, "comma-separated cone ids of orbit closures (default: all)");
  emult->add_flag("--oracle", o.oracle, "compare with the Hilbert series of the dual cone");

  auto* euler = add("euler", "equivariant Euler characteristic of a divisor", cmd_euler);
  fan_opt(euler);
  euler->add_option("--divisor", o.divisor, "divisor name")->required();
  euler->add_flag("--oracle", o.oracle, "compare with the lattice points of the polytope");

  for (auto [name, help, h] : std::vector<std::tuple<const char*, const char*, Handler>>{
           {"integrate", "integrate a fixed-point tuple", cmd_integrate},
           {"gkm-check", "wall divisibility of a tuple", cmd_gkm},
           {"pexp-check", "face agreement of a tuple", cmd_pexp}}) {
    auto* s = add(name, help, h);
    fan_opt(s);
    s->add_option("--tuple", o.tuple, "tuple file")->required();
  }

  auto* dual = add("dual-basis", "dual basis of operational K-theory", cmd_dual_basis);
  fan_opt(dual);
  dual->add_option("--cones", o.cones, "comma-separated cone ids")->required();

  auto* rr = add("rr-check", "Todd, Adams-Riemann-Roch or GRR checks", cmd_rr);
  fan_opt(rr);
  rr->add_option("--divisor", o.divisor, "run the GRR check for this divisor");
  rr->add_option("--adams", o.adams, "run the Adams-Riemann-Roch check for psi^j")->check(CLI::PositiveNumber);
  rr->add_option("--degree", o.degree, "truncation degree");
  rr->add_option("--cone", o.cone, "restrict to one maximal cone");

  auto* adams_cmd = add("adams-check", "Adams operations on a piecewise exponential class", cmd_adams);
  fan_opt(adams_cmd);
  adams_cmd->add_option("--adams", o.adams, "j")->required()->check(CLI::PositiveNumber);
  auto* adams_tuple = adams_cmd->add_option("--tuple", o.tuple, "tuple file");
  adams_cmd->add_option("--divisor", o.divisor, "use the tuple of this divisor")->excludes(adams_tuple);

  auto* sph = add("spherical-check", "relations of a surface kind or a skeleton", cmd_spherical);
  sph->add_option("--kind", o.kind, "pv, p1p1, fn:N, pn:N, kn:N, p1 or point");
  sph->add_option("--skeleton", o.skeleton, "skeleton file");
  sph->add_option("--tuple", o.tuple, "tuple file")->required();

  auto* res = add("resolve", "smooth refinement by stellar subdivision", cmd_resolve);
  fan_opt(res);
  res->add_flag("--oracle", o.oracle, "compare multiplicities under both pivot policies");

  add("corpus", "run the acceptance suite", cmd_corpus);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    for (auto* s : app.get_subcommands()) {
      if (s->get_help_ptr() && s->get_help_ptr()->count() > 0) {
        out << s->help();
        return kExitOk;
      }
    }
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  }

  std::string name;
  Handler handler = nullptr;
  for (auto& [sub, h] : commands)
    if (sub->parsed()) {
      name = sub->get_name();
      handler = h;
    }

  Report r;
  Json doc;
  doc["format"] = "eqloc-report";
  doc["version"] = kStructuredFormatVersion;
  doc["command"] = name;
  std::optional<std::pair<std::string, std::string>> failure;  // kind, message
  try {
    handler(o, r);
  } catch (const NonIntegralResult& e) {
    r.status = kExitMathFailure;
    failure = {"NonIntegralResult", e.what()};
  } catch (const SingularPairing& e) {
    r.status = kExitMathFailure;
    failure = {"SingularPairing", e.what()};
  } catch (const FanError& e) {
    r.status = kExitInputError;
    failure = {std::string("FanError.") + to_string(e.kind()), e.what()};
  } catch (const HalfWeightNotIntegral& e) {
    r.status = kExitInputError;
    failure = {"HalfWeightNotIntegral", e.what()};
  } catch (const std::invalid_argument& e) {
    r.status = kExitInputError;
    failure = {"InputError", e.what()};
  } catch (const InputError& e) {
    r.status = kExitInputError;
    failure = {"InputError", e.what()};
  }

  if (o.format == "structured") {
    doc["status"] = r.status == kExitOk ? "ok" : r.status == kExitMathFailure ? "failure" : "error";
    doc["result"] = r.data;
    if (failure) doc["error"] = {{"kind", failure->first}, {"message", failure->second}};
    out << doc.dump(2) << "\n";
  } else {
    out << r.text.str();
    if (failure) err << "error (" << failure->first << "): " << failure->second << "\n";
  }
  return r.status;
}

}  // namespace eqloc
