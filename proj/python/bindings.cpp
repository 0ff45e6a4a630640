#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "adelent/cli.hpp"
#include "adelent/errors.hpp"
#include "adelent/julia.hpp"
#include "adelent/solenoid.hpp"

namespace py = pybind11;
using namespace adelent;

namespace {

Integer to_integer(const py::object& v) { return Integer(py::str(v).cast<std::string>()); }

}  // namespace

PYBIND11_MODULE(_adelent, m) {
  m.doc() = "Heights, adelic volume growth and entropy";

  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<ComputationError> computation_error(m, "ComputationError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      py::set_error(parse_error, e.what());
    } catch (const ComputationError& e) {
      py::set_error(computation_error, e.what());
    }
  });

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("subcommand", &RunConfig::subcommand)
      .def_readwrite("a", &RunConfig::a)
      .def_readwrite("b", &RunConfig::b)
      .def_readwrite("curve", &RunConfig::curve)
      .def_readwrite("point", &RunConfig::point)
      .def_readwrite("poly", &RunConfig::poly)
      .def_readwrite("q", &RunConfig::q)
      .def_readwrite("action", &RunConfig::action)
      .def_readwrite("rate", &RunConfig::rate)
      .def_readwrite("place_filter", &RunConfig::place_filter)
      .def_readwrite("place", &RunConfig::place)
      .def_readwrite("supplied", &RunConfig::supplied)
      .def_readwrite("n", &RunConfig::n)
      .def_readwrite("panels", &RunConfig::panels)
      .def_readwrite("depth", &RunConfig::depth)
      .def_readwrite("psi_n", &RunConfig::psi_n)
      .def_readwrite("horizon", &RunConfig::horizon)
      .def_readwrite("level", &RunConfig::level)
      .def_readwrite("tol", &RunConfig::tol);

  m.def(
      "execute", [](const RunConfig& c) { return execute(c).dump(); }, py::arg("config"),
      "Report document for a configuration, as JSON text.");

  m.def(
      "run",
      [](const std::vector<std::string>& args) {
        std::vector<std::string> argv{"adelent"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::ostringstream out, err;
        const int status = main_entry(argv, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"), "Run the command line; returns (status, stdout, stderr).");

  m.def(
      "jensen_quadrature",
      [](const py::object& a, const py::object& b, std::size_t panels) {
        return jensen_quadrature(to_integer(a), to_integer(b), panels);
      },
      py::arg("a"), py::arg("b"), py::arg("panels") = 1 << 16);
  m.def(
      "periodic_count",
      [](const py::object& a, const py::object& b, unsigned n) {
        return py::int_(py::str(periodic_count(to_integer(a), to_integer(b), n).get_str()));
      },
      py::arg("a"), py::arg("b"), py::arg("n"));
  m.def("chebyshev_closed_form", &chebyshev_closed_form, py::arg("q"));
  m.def("arcsine_integral", &arcsine_integral, py::arg("q"), py::arg("panels") = 4096);
}
