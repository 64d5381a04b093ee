// Python bindings: bounds, spectra on the three domain kinds, counting
// curves and the config-driven runner used by the CLI.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "krein/app.hpp"
#include "krein/basis.hpp"
#include "krein/bounds.hpp"
#include "krein/errors.hpp"
#include "krein/forms.hpp"
#include "krein/spectra.hpp"

namespace py = pybind11;
using namespace krein;

namespace {

struct Problem {
  forms::AssembledForms forms;
};

Problem assemble(const basis::DomainSpec& domain, int m, std::optional<int> degree,
                 std::optional<int> cells_per_axis, std::optional<int> vanishing) {
  basis::BasisSpec s;
  s.m = m;
  s.degree = degree.value_or(2 * m + 1);
  s.cells_per_axis = cells_per_axis.value_or(domain.is_cell_union() ? 4 : domain.dimension() == 1 ? 32 : 12);
  s.boundary_vanishing = vanishing;
  auto b = std::make_shared<const basis::Basis>(basis::build_basis(domain, s));
  return {forms::assemble_forms(std::move(b))};
}

py::dict spectrum_dict(const spectra::SpectrumResult& r) {
  std::vector<std::vector<double>> vectors(r.eigenvalues.size());
  for (std::size_t j = 0; j < r.eigenvalues.size(); ++j) vectors[j] = r.vectors.column(j);
  py::dict d;
  d["eigenvalues"] = r.eigenvalues;
  d["vectors"] = vectors;
  d["trial_size"] = r.trial_size;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Krein buckling spectra and eigenvalue-counting bounds";

  // Translators run newest first, so the subclasses are registered last.
  const auto& base = py::register_exception<Error>(mod, "KreinError");
  py::register_exception<ValidationError>(mod, "ValidationError", base.ptr());
  py::register_exception<NumericalError>(mod, "NumericalError", base.ptr());

  mod.def("unit_ball_volume", &bounds::unit_ball_volume, py::arg("n"));
  mod.def("krein_constant", &bounds::krein_constant, py::arg("n"), py::arg("m"));
  mod.def("laptev_constant", &bounds::laptev_constant, py::arg("n"), py::arg("m"));
  mod.def(
      "krein_bound",
      [](int n, int m, double volume, double lambda) {
        return bounds::krein_bound(bounds::BoundParams::make(n, m, volume), lambda);
      },
      py::arg("n"), py::arg("m"), py::arg("volume"), py::arg("lam"));
  mod.def(
      "laptev_friedrichs_bound",
      [](int n, int m, double volume, double lambda) {
        return bounds::laptev_friedrichs_bound(bounds::BoundParams::make(n, m, volume), lambda);
      },
      py::arg("n"), py::arg("m"), py::arg("volume"), py::arg("lam"));
  mod.def(
      "weyl_leading",
      [](int n, int m, double volume, double lambda) {
        return bounds::weyl_leading(bounds::BoundParams::make(n, m, volume), lambda);
      },
      py::arg("n"), py::arg("m"), py::arg("volume"), py::arg("lam"));
  mod.def("minimization_objective", &bounds::minimization_objective, py::arg("n"), py::arg("m"),
          py::arg("alpha"));
  mod.def(
      "bound_constant_numeric",
      [](int n, int m, double lo, double hi) {
        const auto r = bounds::bound_constant_numeric(n, m, lo, hi);
        return py::make_tuple(r.minimum, r.alpha_star);
      },
      py::arg("n"), py::arg("m"), py::arg("alpha_lo") = 1e-4, py::arg("alpha_hi") = 1e4,
      "Returns (minimum, alpha_star).");
  mod.def("oracle_1d_krein", &spectra::oracle_1d_krein, py::arg("a"), py::arg("b"), py::arg("how_many"));

  py::class_<basis::DomainSpec>(mod, "Domain")
      .def_static("interval", &basis::DomainSpec::interval, py::arg("a"), py::arg("b"))
      .def_static("box", &basis::DomainSpec::box, py::arg("lo"), py::arg("hi"))
      .def_static("cell_union", &basis::DomainSpec::cell_union, py::arg("h"), py::arg("cells"))
      .def_property_readonly("dimension", &basis::DomainSpec::dimension)
      .def_property_readonly("volume", &basis::DomainSpec::volume);

  py::class_<Problem>(mod, "Problem")
      .def(py::init(&assemble), py::arg("domain"), py::arg("m") = 1, py::arg("degree") = py::none(),
           py::arg("cells_per_axis") = py::none(), py::arg("vanishing") = py::none())
      .def_property_readonly("trial_size", [](const Problem& p) { return p.forms.basis->size(); })
      .def_property_readonly("m", [](const Problem& p) { return p.forms.m; })
      .def("krein_spectrum", [](const Problem& p) { return spectrum_dict(spectra::krein_positive_spectrum(p.forms)); })
      .def("friedrichs_spectrum", [](const Problem& p) { return spectrum_dict(spectra::friedrichs_spectrum(p.forms)); })
      .def(
          "counting_curve",
          [](const Problem& p, const std::vector<double>& lambdas, bool friedrichs) {
            const auto& dom = p.forms.domain();
            const auto c = spectra::counting_curve(p.forms, lambdas,
                                                   bounds::BoundParams::make(dom.dimension(), p.forms.m, dom.volume()),
                                                   friedrichs);
            py::dict d;
            d["lambdas"] = c.lambdas;
            d["counts"] = c.counts;
            d["krein_bound"] = c.bound_values;
            d["weyl"] = c.weyl_values;
            d["on_eigenvalue"] = c.on_eigenvalue;
            d["friedrichs_counts"] = c.friedrichs_counts ? py::cast(*c.friedrichs_counts) : py::none();
            return d;
          },
          py::arg("lambdas"), py::arg("friedrichs") = true)
      .def("bc_residual", [](const Problem& p, double lambda, const std::vector<double>& u) {
        return spectra::krein_bc_check(p.forms, lambda, u);
      }, py::arg("lam"), py::arg("u"));

  mod.def(
      "run_config",
      [](const std::string& text, std::optional<std::string> mode, bool json) {
        std::optional<app::Mode> forced;
        if (mode) forced = app::parse_mode(*mode);
        const auto rep = app::run(app::parse_config(text, forced));
        return py::make_tuple(json ? app::to_json(rep) : app::to_csv(rep.table), rep.exit_code());
      },
      py::arg("text"), py::arg("mode") = py::none(), py::arg("json") = false,
      "Runs a config as the CLI would. Returns (output, exit_code).");
}
