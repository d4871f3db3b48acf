#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "locpovm/covariance.hpp"
#include "locpovm/fock_oracle.hpp"
#include "locpovm/localization.hpp"
#include "locpovm/version.hpp"

namespace py = pybind11;
using namespace locpovm;

PYBIND11_MODULE(_core, m) {
    m.doc() = "localization POVM toolkit: mode-expansion field states, "
              "localization densities, chart geometry, covariance experiments";
    m.attr("__version__") = kVersion;

    py::enum_<Dispersion>(m, "Dispersion")
        .value("continuum", Dispersion::Continuum)
        .value("lattice", Dispersion::Lattice);

    py::class_<LatticeSpec>(m, "LatticeSpec")
        .def(py::init([](int N, double spacing, double mass, Dispersion dispersion) {
                 return LatticeSpec{N, spacing, mass, dispersion};
             }),
             py::arg("N"), py::arg("spacing") = 1.0, py::arg("mass") = 1.0,
             py::arg("dispersion") = Dispersion::Continuum)
        .def_readonly("N", &LatticeSpec::sites)
        .def_readonly("spacing", &LatticeSpec::spacing)
        .def_readonly("mass", &LatticeSpec::mass)
        .def_readonly("dispersion", &LatticeSpec::dispersion)
        .def_property_readonly("length", &LatticeSpec::length);

    py::class_<ModeBasis, std::shared_ptr<ModeBasis>>(m, "ModeBasis")
        .def(py::init([](const LatticeSpec& spec) {
            return std::const_pointer_cast<ModeBasis>(build_mode_basis(spec));
        }))
        .def_property_readonly("spec", &ModeBasis::spec)
        .def("__len__", &ModeBasis::size)
        .def("site", &ModeBasis::site)
        .def("wave_number", &ModeBasis::wave_number)
        .def("frequency", &ModeBasis::frequency);

    py::class_<SingleParticleState>(m, "SingleParticleState")
        .def_property_readonly("amplitudes",
                               [](const SingleParticleState& s) { return s.c; })
        .def_readonly("sandwiched", &SingleParticleState::sandwiched);

    m.def("wave_packet", &make_wave_packet, py::arg("basis"), py::arg("center"),
          py::arg("width"), py::arg("mean_momentum") = 0.0);
    m.def("mode_state", &make_mode_state, py::arg("basis"), py::arg("index"));
    m.def("random_state", &make_random_state, py::arg("basis"), py::arg("seed") = 0);
    m.def("state_from_amplitudes",
          [](BasisPtr basis, const Eigen::VectorXcd& c) {
              return make_state(std::move(basis), c);
          },
          py::arg("basis"), py::arg("amplitudes"));
    m.def("evolve", &evolve, py::arg("state"), py::arg("t"));
    m.def("apply_inverse_sqrt_hamiltonian", &apply_inverse_sqrt_hamiltonian);

    py::class_<LocalizationField>(m, "LocalizationField")
        .def_readonly("grid", &LocalizationField::grid)
        .def_readonly("values", &LocalizationField::values)
        .def_readonly("time", &LocalizationField::time);

    py::class_<QueryInterval>(m, "QueryInterval")
        .def(py::init([](double lo, double hi) {
                 return QueryInterval{lo, hi};
             }),
             py::arg("lo"), py::arg("hi"))
        .def_readonly("lo", &QueryInterval::lo)
        .def_readonly("hi", &QueryInterval::hi);

    m.def("localization_density", &localization_density, py::arg("state"),
          py::arg("t") = 0.0);
    m.def("localization_current", &localization_current, py::arg("state"),
          py::arg("t") = 0.0);
    m.def(
        "continuity_residual",
        [](const SingleParticleState& s, double t) {
            const ContinuityResult r = continuity_residual(s, t);
            return py::make_tuple(r.residual, r.contract_waived);
        },
        py::arg("state"), py::arg("t") = 0.0,
        "returns (residual field, contract_waived)");
    m.def(
        "localization_probability",
        [](const SingleParticleState& s, const QueryInterval& iv, double t) {
            return localization_probability(s, iv, t);
        },
        py::arg("state"), py::arg("interval"), py::arg("t") = 0.0);

    py::enum_<KernelKind>(m, "KernelKind")
        .value("T00", KernelKind::T00)
        .value("T10", KernelKind::T10)
        .value("phi_sq", KernelKind::PhiSq)
        .value("pi_phi_sym", KernelKind::PiPhiSym)
        .value("dphi_phi_sym", KernelKind::DPhiPhiSym);

    m.def(
        "kernel_matrix",
        [](BasisPtr basis, KernelKind kind, int j, double t) {
            return build_kernel(std::move(basis), kind).matrix(j, t);
        },
        py::arg("basis"), py::arg("kind"), py::arg("site"), py::arg("t") = 0.0);
    m.def("fock_oracle_matrix", &fock_oracle, py::arg("spec"), py::arg("kind"),
          py::arg("site"));

    py::class_<Chart>(m, "Chart")
        .def_readonly("kind", &Chart::kind)
        .def_readonly("params", &Chart::params);
    m.def("identity_chart", &identity_chart, py::arg("dim") = 2);
    m.def("dilation_chart", &dilation_chart, py::arg("rate"), py::arg("dim") = 2);
    m.def("rindler_chart", &rindler_chart, py::arg("acceleration"));
    m.def("custom_chart", &custom_chart, py::arg("forward_exprs"),
          py::arg("inverse_exprs"),
          py::arg("params") = std::map<std::string, double>{});

    py::class_<FoliationScenario>(m, "FoliationScenario")
        .def_readonly("non_inertial", &FoliationScenario::non_inertial);
    m.def("build_scenario", &build_scenario);

    py::class_<DiscrepancyReport>(m, "DiscrepancyReport")
        .def_readonly("naive_form", &DiscrepancyReport::naive_form)
        .def_readonly("linear_form", &DiscrepancyReport::linear_form)
        .def_readonly("discrepancy", &DiscrepancyReport::discrepancy)
        .def_readonly("term_phi2", &DiscrepancyReport::term_phi2)
        .def_readonly("term_piphi", &DiscrepancyReport::term_piphi)
        .def_readonly("term_dphiphi", &DiscrepancyReport::term_dphiphi);

    m.def("pi00_linear", &pi00_linear);
    m.def("discrepancy_field", &discrepancy_field);
    m.def("modified_localization_density", &modified_localization_density);
    m.def("naive_contraction_density", &naive_contraction_density);

    py::class_<CovarianceRow>(m, "CovarianceRow")
        .def_readonly("lo", &CovarianceRow::lo)
        .def_readonly("hi", &CovarianceRow::hi)
        .def_readonly("prob_cartesian", &CovarianceRow::prob_cartesian)
        .def_readonly("prob_naive", &CovarianceRow::prob_naive)
        .def_readonly("prob_modified", &CovarianceRow::prob_modified)
        .def_readonly("dev_naive", &CovarianceRow::dev_naive)
        .def_readonly("dev_modified", &CovarianceRow::dev_modified);
    m.def("covariance_check", &covariance_check);

    py::enum_<ChartFamily>(m, "ChartFamily")
        .value("dilation", ChartFamily::Dilation)
        .value("rindler", ChartFamily::Rindler);
    py::class_<ScanRow>(m, "ScanRow")
        .def_readonly("parameter", &ScanRow::parameter)
        .def_readonly("max_abs_discrepancy", &ScanRow::max_abs_discrepancy)
        .def_readonly("max_dev_modified", &ScanRow::max_dev_modified)
        .def_readonly("non_inertial", &ScanRow::non_inertial);
    m.def("metric_condition_scan", &metric_condition_scan);
}
