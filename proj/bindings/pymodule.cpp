// Python surface of the library. Strings and dicts at the boundary where the
// C++ API uses tag structs; pins stay 0-based as in the C++ API.
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "cstrcycle/cases.hpp"
#include "cstrcycle/fliess.hpp"
#include "cstrcycle/model.hpp"
#include "cstrcycle/schedule.hpp"
#include "cstrcycle/sim.hpp"
#include "cstrcycle/solver.hpp"

namespace py = pybind11;
using namespace cstrcycle;

namespace {

std::vector<double> sample_field(const Trajectory& tr, int which) {
  std::vector<double> out;
  out.reserve(tr.samples.size());
  for (const Sample& s : tr.samples) {
    switch (which) {
      case 0: out.push_back(s.t); break;
      case 1: out.push_back(s.x(0)); break;
      case 2: out.push_back(s.x(1)); break;
      case 3: out.push_back(s.u(0)); break;
      default: out.push_back(s.u(1)); break;
    }
  }
  return out;
}

const BenchmarkCase& find_case(const std::vector<BenchmarkCase>& cases,
                               const std::string& label) {
  for (const BenchmarkCase& c : cases) {
    if (c.label == label) return c;
  }
  throw std::invalid_argument("unknown case label: " + label);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Periodic bang-bang schedules and costs for a two-state reactor model";
  m.attr("__version__") = "0.1.0";

  py::register_exception<SolverError>(m, "SolverError");
  py::register_exception<DomainExitError>(m, "DomainExitError");

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("gamma", &ModelParams::gamma)
      .def_readwrite("k1", &ModelParams::k1)
      .def_readwrite("k2", &ModelParams::k2)
      .def_readwrite("St", &ModelParams::St)
      .def_readwrite("delta", &ModelParams::delta)
      .def_readwrite("n_bar", &ModelParams::n_bar);
  py::class_<PhysicalParams>(m, "PhysicalParams")
      .def(py::init<>())
      .def_readwrite("activation_energy", &PhysicalParams::activation_energy)
      .def_readwrite("gas_constant", &PhysicalParams::gas_constant)
      .def_readwrite("collision_factor", &PhysicalParams::collision_factor)
      .def_readwrite("reaction_heat", &PhysicalParams::reaction_heat)
      .def_readwrite("rho_cp", &PhysicalParams::rho_cp)
      .def_readwrite("volume", &PhysicalParams::volume)
      .def_readwrite("flow_rate_ss", &PhysicalParams::flow_rate_ss)
      .def_readwrite("conc_out_ss", &PhysicalParams::conc_out_ss)
      .def_readwrite("conc_in_ss", &PhysicalParams::conc_in_ss)
      .def_readwrite("temp_ss", &PhysicalParams::temp_ss)
      .def_readwrite("reaction_order", &PhysicalParams::reaction_order);
  m.def("default_params", &default_params);
  m.def("default_physical_params", &default_physical_params);
  m.def("dimensionless_from_physical", &dimensionless_from_physical,
        py::arg("physical"), py::arg("St") = 0.0, py::arg("delta") = 0.0);
  m.def("drift", &drift, py::arg("params"), py::arg("x"), py::arg("u"));
  m.def("jacobian_f0", &jacobian_f0, py::arg("params"), py::arg("x"));
  m.def("in_domain", &in_domain, py::arg("x"));

  py::class_<ControlBounds>(m, "ControlBounds")
      .def(py::init<>())
      .def_readwrite("v1_min", &ControlBounds::v1_min)
      .def_readwrite("v1_max", &ControlBounds::v1_max)
      .def_readwrite("v2_min", &ControlBounds::v2_min)
      .def_readwrite("v2_max", &ControlBounds::v2_max);
  m.def("default_bounds", &default_bounds);

  py::class_<Schedule>(m, "Schedule")
      .def(py::init<>())
      .def_readonly("tau", &Schedule::tau)
      .def_readonly("controls", &Schedule::controls)
      .def_readonly("alphas", &Schedule::alphas)
      .def("size", &Schedule::size)
      .def("switch_time", &Schedule::switch_time, py::arg("j"));
  m.def("make_schedule", &make_schedule, py::arg("tau"), py::arg("controls"),
        py::arg("alphas"));
  m.def(
      "strategy_order",
      [](const std::string& strategy) {
        std::vector<std::string> names;
        for (Vertex v : strategy_vertices(parse_strategy(strategy))) {
          names.emplace_back(vertex_name(v));
        }
        return names;
      },
      py::arg("strategy"));
  m.def(
      "strategy_schedule",
      [](const std::string& strategy, double tau,
         const std::map<int, double>& pinned, double u1_bar) {
        return strategy_schedule(parse_strategy(strategy), default_bounds(),
                                 tau, pinned, u1_bar);
      },
      py::arg("strategy"), py::arg("tau"),
      py::arg("pinned") = std::map<int, double>{}, py::arg("u1_bar") = 1.0);

  py::class_<AlphaFamily>(m, "AlphaFamily")
      .def_readonly("feasible", &AlphaFamily::feasible)
      .def_readonly("degenerate", &AlphaFamily::degenerate)
      .def_readonly("forced", &AlphaFamily::forced)
      .def_readonly("free", &AlphaFamily::free)
      .def_readonly("bounds", &AlphaFamily::bounds)
      .def_readonly("base", &AlphaFamily::base);
  m.def("feasible_alpha_family", &feasible_alpha_family, py::arg("u1_values"),
        py::arg("u1_bar") = 1.0);
  m.def("solve_alphas", &solve_alphas, py::arg("u1_values"), py::arg("pinned"),
        py::arg("u1_bar") = 1.0);
  m.def("alpha1_two_segment", &alpha1_two_segment, py::arg("u11"),
        py::arg("u12"), py::arg("u1_bar") = 1.0);
  m.def("iso_residual", &iso_residual, py::arg("schedule"),
        py::arg("u1_bar") = 1.0);

  m.def(
      "iterated_integrals",
      [](const Schedule& s, double t) {
        const IteratedIntegrals ii =
            iterated_integrals(piecewise_from_schedule(s), t);
        std::map<std::string, double> out;
        for (const Word& w : all_words()) out[w.str()] = ii.value(w);
        return out;
      },
      py::arg("schedule"), py::arg("t"),
      "Iterated input integrals up to length 3, keyed by word");
  m.def(
      "fliess_state",
      [](const ModelParams& p, const Vec2& x0, const Schedule& s, double t) {
        return fliess_state(p, x0, piecewise_from_schedule(s), t);
      },
      py::arg("params"), py::arg("x0"), py::arg("schedule"), py::arg("t"),
      "Third-order series approximation of the state at time t");
  m.def("periodicity_residual", &periodicity_residual, py::arg("params"),
        py::arg("x0"), py::arg("schedule"));
  m.def("cost_estimate", &cost_estimate, py::arg("params"), py::arg("x0"),
        py::arg("schedule"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_property_readonly(
          "t", [](const Trajectory& tr) { return sample_field(tr, 0); })
      .def_property_readonly(
          "x1", [](const Trajectory& tr) { return sample_field(tr, 1); })
      .def_property_readonly(
          "x2", [](const Trajectory& tr) { return sample_field(tr, 2); })
      .def_property_readonly(
          "u1", [](const Trajectory& tr) { return sample_field(tr, 3); })
      .def_property_readonly(
          "u2", [](const Trajectory& tr) { return sample_field(tr, 4); })
      .def_readonly("tau", &Trajectory::tau);
  py::class_<FlowResult>(m, "FlowResult")
      .def_readonly("x", &FlowResult::x)
      .def_readonly("cost_integral", &FlowResult::cost_integral)
      .def_readonly("u1_integral", &FlowResult::u1_integral);
  m.def("integrate", &integrate, py::arg("params"), py::arg("x0"),
        py::arg("schedule"), py::arg("steps_per_unit_time") = 4000);
  m.def("cost", &cost, py::arg("trajectory"));
  m.def("flow", &flow, py::arg("params"), py::arg("x0"), py::arg("schedule"),
        py::arg("steps_per_unit_time") = 4000);

  py::class_<NewtonConfig>(m, "NewtonConfig")
      .def(py::init<>())
      .def_readwrite("tol", &NewtonConfig::tol)
      .def_readwrite("max_iter", &NewtonConfig::max_iter)
      .def_readwrite("fd_step", &NewtonConfig::fd_step)
      .def_readwrite("damping", &NewtonConfig::damping)
      .def_readwrite("max_halvings", &NewtonConfig::max_halvings);
  py::class_<PeriodicSolution>(m, "PeriodicSolution")
      .def_readonly("x0", &PeriodicSolution::x0)
      .def_readonly("schedule", &PeriodicSolution::schedule)
      .def_readonly("defect", &PeriodicSolution::defect)
      .def_readonly("cost", &PeriodicSolution::cost)
      .def_property_readonly("method", [](const PeriodicSolution& s) {
        return std::string(method_name(s.method));
      });
  m.def(
      "solve_x0_expansion",
      [](const ModelParams& p, const Schedule& s, const NewtonConfig& cfg,
         const Vec2& guess) { return solve_x0_expansion(p, s, cfg, guess); },
      py::arg("params"), py::arg("schedule"),
      py::arg("config") = NewtonConfig{}, py::arg("guess") = Vec2(0.0, 0.0));
  m.def(
      "shoot_periodic",
      [](const ModelParams& p, const Schedule& s, const Vec2& guess,
         const NewtonConfig& cfg, int steps) {
        return shoot_periodic(p, s, guess, cfg, steps);
      },
      py::arg("params"), py::arg("schedule"),
      py::arg("guess") = Vec2(0.0, 0.0), py::arg("config") = NewtonConfig{},
      py::arg("steps_per_unit_time") = 4000);
  m.def(
      "solve_alpha_and_x0",
      [](const ModelParams& p, const std::string& strategy,
         const std::map<int, double>& pinned, double u1_bar, double tau) {
        return solve_alpha_and_x0(p, parse_strategy(strategy),
                                  default_bounds(), pinned, u1_bar, tau);
      },
      py::arg("params"), py::arg("strategy"),
      py::arg("pinned") = std::map<int, double>{}, py::arg("u1_bar") = 1.0,
      py::arg("tau") = 0.5);

  py::class_<CaseResult>(m, "CaseResult")
      .def_readonly("label", &CaseResult::label)
      .def_readonly("alphas", &CaseResult::alphas)
      .def_readonly("x0_expansion", &CaseResult::x0_expansion)
      .def_readonly("expansion_ok", &CaseResult::expansion_ok)
      .def_readonly("x0", &CaseResult::x0)
      .def_readonly("defect", &CaseResult::defect)
      .def_readonly("cost", &CaseResult::cost)
      .def_readonly("iso_average", &CaseResult::iso_average)
      .def_readonly("status", &CaseResult::status);
  m.def("case_labels", [] {
    std::vector<std::string> labels;
    for (const BenchmarkCase& c : table1_cases()) labels.push_back(c.label);
    return labels;
  });
  m.def(
      "case_schedule",
      [](const std::string& label, double tau, double u1_bar) {
        return case_schedule(find_case(table1_cases(), label), tau,
                             ControlBounds{}, u1_bar);
      },
      py::arg("label"), py::arg("tau") = 0.5, py::arg("u1_bar") = 1.0);
  m.def(
      "run_case",
      [](const ModelParams& p, const std::string& label, double tau,
         int steps) {
        return run_case(p, find_case(table1_cases(), label), tau, steps);
      },
      py::arg("params"), py::arg("label"), py::arg("tau") = 0.5,
      py::arg("steps_per_unit_time") = 4000);
  m.def("run_table1", &run_table1, py::arg("params"), py::arg("tau") = 0.5,
        py::arg("steps_per_unit_time") = 4000,
        py::arg("bounds") = ControlBounds{}, py::arg("u1_bar") = 1.0);
}
