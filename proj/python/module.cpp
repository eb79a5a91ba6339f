#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccs/experiment.hpp"

namespace py = pybind11;
using namespace ccs;

PYBIND11_MODULE(_ccs, m) {
  m.doc() = "Relaxation-based central scheme for coupled conservation laws";

  py::class_<RelaxState>(m, "RelaxState")
      .def(py::init<StateVec, StateVec>(), py::arg("u"), py::arg("v"))
      .def_readwrite("u", &RelaxState::u)
      .def_readwrite("v", &RelaxState::v);

  py::class_<EigenStructure>(m, "EigenStructure")
      .def_property_readonly("lambdas",
                             [](const EigenStructure& e) { return e.lambdas; });

  py::class_<RiemannSolution>(m, "RiemannSolution")
      .def_readonly("q_r", &RiemannSolution::q_r)
      .def_readonly("q_l", &RiemannSolution::q_l)
      .def_readonly("sigma_minus", &RiemannSolution::sigma_minus)
      .def_readonly("sigma_plus", &RiemannSolution::sigma_plus)
      .def_readonly("residual_norm", &RiemannSolution::residual_norm)
      .def_readonly("iterations", &RiemannSolution::iterations);

  m.def(
      "eigenstructure",
      [](const Vec& diag) { return eigenstructure(RelaxMatrix(diag, Side::left)); },
      py::arg("diag"));

  m.def(
      "characteristic_vars",
      [](const RelaxState& q, const Vec& diag) {
        return characteristic_vars(q, RelaxMatrix(diag, Side::left));
      },
      py::arg("q"), py::arg("diag"));

  m.def(
      "solve_kirchhoff",
      [](const RelaxState& q0m, const RelaxState& q0p, const Vec& diag) {
        return solve_kirchhoff(q0m, q0p, RelaxMatrix(diag, Side::left));
      },
      py::arg("q0_minus"), py::arg("q0_plus"), py::arg("diag"));

  m.def(
      "solve_linear_psystem",
      [](int approach, const RelaxState& q0m, const RelaxState& q0p, double a,
         double e) {
        return psystem::solve_linear_psystem(psystem::CouplingApproach::make(approach),
                                             q0m, q0p, a, e);
      },
      py::arg("approach"), py::arg("q0_minus"), py::arg("q0_plus"), py::arg("a"),
      py::arg("e_value"));

  m.def("solve_approach4", &psystem::solve_approach4, py::arg("q0_minus"),
        py::arg("q0_plus"), py::arg("a"), py::arg("e_value"));

  m.def(
      "contraction_bound_approach4",
      [](const RelaxState& q0m, const RelaxState& q0p, double a, double e,
         const std::vector<Vec>& sigma_samples) {
        const RelaxMatrix am({a, a}, Side::left), ap({a, a}, Side::right);
        const GeneralCoupling c =
            psystem::build_coupling(psystem::CouplingApproach::make(4), e, a);
        return contraction_bound(c, q0m, q0p, am, ap, sigma_samples);
      },
      py::arg("q0_minus"), py::arg("q0_plus"), py::arg("a"), py::arg("e_value"),
      py::arg("sigma_samples"));

  m.def(
      "psystem_flux",
      [](const StateVec& u, double alpha, double gamma) {
        return psystem::psystem_flux(u, psystem::PSystemModel{alpha, gamma, 1.0});
      },
      py::arg("u"), py::arg("alpha"), py::arg("gamma"));

  m.def(
      "relax_rate_a",
      [](double alpha, double gamma, double rho_max, double rho_min) {
        return psystem::relax_rate_a(psystem::PSystemModel{alpha, gamma, rho_max},
                                     rho_min);
      },
      py::arg("alpha"), py::arg("gamma"), py::arg("rho_max"),
      py::arg("rho_min") = 0.0);

  m.def(
      "outtake",
      [](double t) { return psystem::outtake(t, psystem::OuttakeSchedule{}); },
      py::arg("t"));

  m.def("coupling_errors", &diagnostics::coupling_errors, py::arg("u_left"),
        py::arg("u_right"), py::arg("e_value"));

  m.def("eoc", &diagnostics::eoc, py::arg("errors"));

  m.def(
      "run_psystem_experiment",
      [](int approach, std::size_t cells, double epsilon) {
        const psystem::ExperimentResult r =
            psystem::run_experiment(psystem::Experiment{}, approach, cells, epsilon);
        py::dict out;
        out["l1_e1"] = r.l1_e1;
        out["l1_e2"] = r.l1_e2;
        out["dt"] = r.dt;
        out["times"] = r.errors.times;
        out["e1"] = r.errors.e1;
        out["e2"] = r.errors.e2;
        py::list snaps;
        for (const GridState& s : r.sim.snapshots) {
          py::dict snap;
          snap["time"] = s.time;
          snap["u"] = s.u;
          snaps.append(snap);
        }
        out["snapshots"] = snaps;
        return out;
      },
      py::arg("approach"), py::arg("cells"), py::arg("epsilon") = 0.0);
}
