#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "eqloc/cli.hpp"
#include "eqloc/localize.hpp"
#include "eqloc/spherical.hpp"

namespace py = pybind11;
using namespace eqloc;

namespace {

FixedPointTuple fan_tuple(const Fan& fan, const std::string& tuple_text) {
  return tuple_for_fan(parse_tuple(tuple_text, Notation::standard(fan.rank())), fan);
}

std::vector<std::string> render(const std::vector<LocalizedClass>& xs, std::size_t rank) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(to_string(x, Notation::standard(rank)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_eqloc, m) {
  m.doc() = "Equivariant localization on toric and spherical varieties";

  py::register_exception<NonIntegralResult>(m, "NonIntegralResult", PyExc_ArithmeticError);

  m.def(
      "em_table",
      [](const std::string& fan_text) {
        const Fan fan = parse_fan(fan_text);
        return render(em_table(fan), fan.rank());
      },
      py::arg("fan"), "Multiplicities at the fixed points, one string per maximal cone.");

  m.def(
      "euler_characteristic",
      [](const std::string& fan_text, const std::string& divisor) {
        const Fan fan = parse_fan(fan_text);
        return to_string(euler_char(fan, fan.divisor(divisor).coefficients), Notation::standard(fan.rank()));
      },
      py::arg("fan"), py::arg("divisor"));

  m.def(
      "lattice_point_sum",
      [](const std::string& fan_text, const std::string& divisor) {
        const Fan fan = parse_fan(fan_text);
        return to_string(lattice_point_sum(fan, fan.divisor(divisor).coefficients), Notation::standard(fan.rank()));
      },
      py::arg("fan"), py::arg("divisor"));

  m.def(
      "integrate",
      [](const std::string& fan_text, const std::string& tuple_text) {
        const Fan fan = parse_fan(fan_text);
        return to_string(integrate(fan, fan_tuple(fan, tuple_text)), Notation::standard(fan.rank()));
      },
      py::arg("fan"), py::arg("tuple"));

  m.def(
      "gkm_violations",
      [](const std::string& fan_text, const std::string& tuple_text) {
        const Fan fan = parse_fan(fan_text);
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& v : gkm_check(fan, fan_tuple(fan, tuple_text))) out.emplace_back(v.wall.left, v.wall.right);
        return out;
      },
      py::arg("fan"), py::arg("tuple"), "Fixed-point pairs of the walls where divisibility fails.");

  m.def(
      "surface_violations",
      [](const std::string& kind_text, const std::string& tuple_text) {
        const SurfaceKind kind = parse_surface_kind(kind_text);
        const auto f = tuple_for_labels(parse_tuple(tuple_text, surface_notation()), surface_data(kind).fixed_points);
        std::vector<std::string> out;
        for (const auto& v : check_relations(kind, f)) out.push_back(v.name);
        return out;
      },
      py::arg("kind"), py::arg("tuple"), "Names of the violated relations.");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs a command line; returns (exit status, stdout, stderr).");
}
