#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "modweyl/crossed.hpp"
#include "modweyl/decomposition.hpp"
#include "modweyl/harness.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace modweyl;

namespace {

py::dict report_dict(const ValidationReport& r) {
  py::dict axioms;
  for (const auto& ax : r.axioms)
    axioms[axiom_name(ax.axiom)] = py::dict("residual"_a = ax.residual, "witness"_a = ax.witness, "pass"_a = ax.pass);
  return py::dict("pass"_a = r.pass(), "worst_residual"_a = r.worst_residual(), "axioms"_a = axioms);
}

}  // namespace

PYBIND11_MODULE(_modweyl, m) {
  m.doc() = "Finite covariant Stone-von Neumann toolkit";
  m.attr("__version__") = MODWEYL_VERSION;

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<FiniteAbelianGroup>(m, "FiniteAbelianGroup")
      .def(py::init<std::vector<int>>(), "factors"_a)
      .def_property_readonly("factors", &FiniteAbelianGroup::factors)
      .def_property_readonly("order", &FiniteAbelianGroup::order)
      .def("pair",
           [](const FiniteAbelianGroup& g, std::vector<int> phi, std::vector<int> x) {
             return g.pair(g.character(std::move(phi)), g.element(std::move(x)));
           },
           "phi"_a, "x"_a)
      .def("compose",
           [](const FiniteAbelianGroup& g, std::vector<int> a, std::vector<int> b) {
             return g.compose(g.element(std::move(a)), g.element(std::move(b))).coords;
           })
      .def("character_table", &FiniteAbelianGroup::character_table);

  py::class_<Action>(m, "Action")
      .def_static("trivial", &Action::trivial, "group"_a, "d"_a)
      .def_static("from_generators", &Action::from_generators, "group"_a, "generators"_a, "tol"_a = kDefaultTol)
      .def_property_readonly("dim", &Action::dim)
      .def_property_readonly("group", &Action::group)
      .def("unitary", &Action::unitary, "x"_a)
      .def("apply", py::overload_cast<std::size_t, const Mat&>(&Action::apply, py::const_), "x"_a, "t"_a)
      .def("is_trivial", &Action::is_trivial, "tol"_a = kDefaultTol);

  py::class_<HeisenbergRep>(m, "HeisenbergRep")
      .def_property_readonly("rank", [](const HeisenbergRep& r) { return r.module.rank(); })
      .def_property_readonly("R", [](const HeisenbergRep& r) {
        std::vector<Mat> out;
        for (const auto& t : r.R) out.push_back(t.matrix());
        return out;
      })
      .def_property_readonly("S", [](const HeisenbergRep& r) {
        std::vector<Mat> out;
        for (const auto& t : r.S) out.push_back(t.matrix());
        return out;
      })
      .def("rho", [](const HeisenbergRep& r, const Mat& a) { return r.rho(a).matrix(); }, "a"_a);

  m.def("schrodinger", &schrodinger, "alpha"_a);
  m.def("random_heisenberg", &random_heisenberg, "alpha"_a, "m"_a, "seed"_a);
  m.def("validate_heisenberg",
        [](const HeisenbergRep& rep, double tol) { return report_dict(validate_heisenberg(rep, tol)); }, "rep"_a,
        "tol"_a = kDefaultTol);
  m.def(
      "decompose",
      [](const HeisenbergRep& rep, double tol) {
        const DecompositionResult r = decompose(rep, tol);
        return py::dict("m"_a = r.multiplicity, "rank_m"_a = r.rank_multiplicity, "W"_a = r.W.matrix(),
                        "residuals"_a = py::dict("R"_a = r.residuals.R, "S"_a = r.residuals.S, "rho"_a = r.residuals.rho),
                        "unitarity"_a = r.unitarity, "W_checksum"_a = matrix_checksum(r.W.matrix()),
                        "diagnostic"_a = r.diagnostic);
      },
      "rep"_a, "tol"_a = kDefaultTol);
  m.def(
      "inequivalence_witness",
      [](const Action& a, const Action& b, double tol) -> py::object {
        const auto w = inequivalence_witness(a, b, tol);
        if (!w) return py::none();
        return py::dict("x"_a = w->x.coords, "i"_a = w->i, "j"_a = w->j, "gap"_a = w->gap,
                        "contradiction"_a = w->contradiction);
      },
      "alpha"_a, "beta"_a, "tol"_a = kDefaultTol);
  m.def("fourier", &fourier, "group"_a, "f"_a, "weight"_a = 1.0);
  m.def("inverse_fourier", &inverse_fourier, "group"_a, "g"_a, "weight"_a = 1.0);
  m.def(
      "takai",
      [](const Action& a, std::size_t samples, std::uint64_t seed) {
        const TakaiReport t = takai_iso(a, samples, seed);
        return py::dict("lhs_dimension"_a = t.lhs_dimension, "rhs_dimension"_a = t.rhs_dimension,
                        "map_rank"_a = t.map_rank, "composite_rank"_a = t.composite_rank,
                        "worst_residual"_a = t.worst_residual());
      },
      "alpha"_a, "samples"_a = 5, "seed"_a = 1);
  m.def(
      "verify",
      [](const std::string& config_json) {
        const RunConfig cfg = parse_config(config_json);
        py::gil_scoped_release release;
        return run(cfg).to_json();
      },
      "config_json"_a, "Runs the suites of a JSON config and returns the report as JSON text.");
  m.def("demo", [] {
    std::ostringstream out;
    demo(out);
    return out.str();
  });
}
