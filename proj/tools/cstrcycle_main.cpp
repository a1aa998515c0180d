// Command-line front end: benchmark table, single solves, sweeps, trajectory
// export, strategy listing. Exit codes: 0 success, 1 bad input, 2 solver
// non-convergence. Whole-run commands (table1, sweep) report per-row failures
// in a status field and still exit 0.
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cstrcycle/cases.hpp"
#include "cstrcycle/fliess.hpp"
#include "cstrcycle/io.hpp"
#include "cstrcycle/model.hpp"
#include "cstrcycle/schedule.hpp"
#include "cstrcycle/sim.hpp"
#include "cstrcycle/solver.hpp"

namespace {

using namespace cstrcycle;

constexpr int kOk = 0;
constexpr int kBadInput = 1;
constexpr int kNoConvergence = 2;

struct Options {
  std::string params_path;
  double tau = 0.5;
  double u1_bar = 1.0;
  std::string out;
  std::string format = "csv";
  int steps = 4000;
  bool dump_integrals = false;

  std::string strategy;
  std::string case_label;
  std::vector<std::string> pins;
  std::string x0_text = "0,0";
  std::string schedule_path;
  std::string alpha_grid;
  std::string tau_grid;
  bool nominal = false;
  int slot = 0;  // 1-based sweep slot override; 0 means default
};

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--params", o.params_path,
                  "JSON parameter file (dimensionless or plant units)");
  cmd->add_option("--tau", o.tau, "cycle period")->capture_default_str();
  cmd->add_option("--u1-bar", o.u1_bar, "prescribed average of u1")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "output file (default stdout)");
  cmd->add_option("--format", o.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--steps", o.steps, "integrator steps per unit time")
      ->capture_default_str();
  cmd->add_flag("--dump-integrals", o.dump_integrals,
                "write the iterated integrals at t=tau to stderr as JSON");
}

double parse_number(const std::string& s) {
  const auto slash = s.find('/');
  std::size_t used = 0;
  if (slash == std::string::npos) {
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("bad number: " + s);
    return v;
  }
  const std::string num = s.substr(0, slash);
  const std::string den = s.substr(slash + 1);
  const double p = std::stod(num, &used);
  if (used != num.size()) throw std::invalid_argument("bad number: " + s);
  const double q = std::stod(den, &used);
  if (used != den.size() || q == 0.0) {
    throw std::invalid_argument("bad number: " + s);
  }
  return p / q;
}

// "--pin i=v" uses 1-based segment indices; v may be a fraction like 5/12.
std::map<int, double> parse_pins(const std::vector<std::string>& specs) {
  std::map<int, double> pins;
  for (const std::string& s : specs) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("pin must look like i=value: " + s);
    }
    const int idx = std::stoi(s.substr(0, eq));
    if (idx < 1) throw std::invalid_argument("pin index is 1-based: " + s);
    const double val = parse_number(s.substr(eq + 1));
    if (!pins.emplace(idx - 1, val).second) {
      throw std::invalid_argument("duplicate pin for segment " +
                                  std::to_string(idx));
    }
  }
  return pins;
}

Vec2 parse_x0(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument("state must look like x1,x2: " + s);
  }
  return Vec2(parse_number(s.substr(0, comma)),
              parse_number(s.substr(comma + 1)));
}

// Grid syntax: either "a:b:n" (n points, endpoints included) or a comma list.
std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> grid;
  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) {
      throw std::invalid_argument("grid must be a:b:n or v1,v2,...: " + s);
    }
    const double a = parse_number(parts[0]);
    const double b = parse_number(parts[1]);
    const int n = std::stoi(parts[2]);
    if (n < 1) throw std::invalid_argument("grid needs at least one point");
    for (int i = 0; i < n; ++i) {
      grid.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    }
    return grid;
  }
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) grid.push_back(parse_number(part));
  return grid;
}

ModelParams load_params(const Options& o) {
  if (o.params_path.empty()) return default_params();
  return params_from_json_file(o.params_path);
}

void write_output(const Options& o, const std::string& content) {
  if (o.out.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + o.out);
  out << content;
}

void maybe_dump_integrals(const Options& o, const Schedule& s) {
  if (!o.dump_integrals) return;
  const auto ii = iterated_integrals(piecewise_from_schedule(s), s.tau);
  std::cerr << integrals_to_json(ii);
}

std::string summary_line(double J, double defect) {
  return "{\"J\": " + format_sig(J) + ", \"defect\": " + format_sig(defect) +
         "}\n";
}

// Shared row pipeline: expansion root (best effort), shooting refinement,
// one verification flow for defect, cost, and the isoperimetric average.
CaseResult solve_row(const ModelParams& p, const std::string& label,
                     const Schedule& s, int steps) {
  CaseResult r;
  r.label = label;
  r.alphas = s.alphas;
  try {
    r.x0_expansion = solve_x0_expansion(p, s);
    r.expansion_ok = true;
  } catch (const SolverError&) {
  }
  const Vec2 guess = r.expansion_ok ? r.x0_expansion : Vec2::Zero();
  try {
    const PeriodicSolution sol = shoot_periodic(p, s, guess, {}, steps);
    r.x0 = sol.x0;
    r.defect = sol.defect;
    r.cost = sol.cost;
    const FlowResult fr = flow(p, sol.x0, s, steps);
    r.iso_average = fr.u1_integral / s.tau;
  } catch (const std::exception& e) {
    r.status = std::string("shooting failed: ") + e.what();
    r.x0 = Vec2::Zero();
    r.defect = std::nan("");
    r.cost = std::nan("");
    r.iso_average = std::nan("");
  }
  return r;
}

int cmd_table1(const Options& o) {
  const ModelParams p = load_params(o);
  const ControlBounds b = default_bounds();
  const auto all = run_table1(p, o.tau, o.steps, b, o.u1_bar);
  std::vector<CaseResult> rows;
  for (const CaseResult& r : all) {
    if (r.status.rfind("infeasible", 0) == 0) continue;
    rows.push_back(r);
  }
  if (rows.empty()) {
    std::cerr << "warning: no feasible rows for u1_bar=" << o.u1_bar << "\n";
  }
  write_output(o, o.format == "json" ? case_results_to_json(rows)
                                     : case_results_to_csv(rows));
  return kOk;
}

int cmd_strategies(const Options& o) {
  const auto infos = enumerate_strategies(default_bounds(), o.u1_bar);
  if (infos.empty()) {
    std::cerr << "warning: no feasible strategies for u1_bar=" << o.u1_bar
              << "\n";
  }
  write_output(o, o.format == "json" ? strategies_to_json(infos)
                                     : strategies_to_csv(infos));
  return kOk;
}

int cmd_solve(const Options& o) {
  const ModelParams p = load_params(o);
  const ControlBounds b = default_bounds();
  const std::map<int, double> cli_pins = parse_pins(o.pins);

  Schedule sched;
  Vec2 guess = Vec2::Zero();
  bool have_guess = false;
  if (!o.case_label.empty()) {
    const auto cases = table1_cases();
    const BenchmarkCase* found = nullptr;
    for (const BenchmarkCase& c : cases) {
      if (c.label == o.case_label) {
        found = &c;
        break;
      }
    }
    if (!found) {
      throw std::invalid_argument("unknown case label: " + o.case_label);
    }
    std::map<int, double> pins = found->pinned;
    for (const auto& [k, v] : cli_pins) pins[k] = v;
    const VertexSet vs = vertices_from_bounds(b);
    std::vector<Vec2> controls;
    std::vector<double> u1;
    for (Vertex v : found->order) {
      controls.push_back(vs.get(v));
      u1.push_back(controls.back()(0));
    }
    sched = make_schedule(o.tau, controls, solve_alphas(u1, pins, o.u1_bar));
  } else if (!o.strategy.empty()) {
    const StrategyId id = parse_strategy(o.strategy);
    const auto [alphas, x0] =
        solve_alpha_and_x0(p, id, b, cli_pins, o.u1_bar, o.tau);
    sched = make_schedule(o.tau, build_strategy(id, b), alphas);
    guess = x0;
    have_guess = true;
  } else {
    throw std::invalid_argument("solve needs --strategy or --case");
  }

  if (!have_guess) {
    try {
      guess = solve_x0_expansion(p, sched);
    } catch (const SolverError&) {
      guess = Vec2::Zero();
    }
  }
  const PeriodicSolution sol = shoot_periodic(p, sched, guess, {}, o.steps);
  maybe_dump_integrals(o, sched);
  write_output(o, solution_to_json(sol));
  return kOk;
}

int cmd_simulate(const Options& o) {
  const ModelParams p = load_params(o);
  if (o.schedule_path.empty()) {
    throw std::invalid_argument("simulate needs --schedule <file>");
  }
  const Schedule sched = schedule_from_json_file(o.schedule_path);
  const Vec2 x0 = parse_x0(o.x0_text);
  const Trajectory traj = integrate(p, x0, sched, o.steps);
  const double J = cost(traj);
  const double defect = (traj.samples.back().x - x0).norm();
  std::ostringstream csv;
  write_trajectory_csv(csv, traj);
  write_output(o, csv.str());
  // The summary keeps stdout pure CSV when no output file is given.
  (o.out.empty() ? std::cerr : std::cout) << summary_line(J, defect);
  maybe_dump_integrals(o, sched);
  return kOk;
}

int cmd_sweep(const Options& o) {
  const ModelParams p = load_params(o);
  const ControlBounds b = default_bounds();
  if (o.strategy.empty()) {
    throw std::invalid_argument("sweep needs --strategy");
  }
  if (!o.alpha_grid.empty() && !o.tau_grid.empty()) {
    throw std::invalid_argument("sweep takes exactly one of --alpha-grid and --tau-grid");
  }
  const std::map<int, double> extra_pins = parse_pins(o.pins);

  std::vector<Vec2> controls;
  int slot = -1;
  std::string tag;
  if (o.nominal) {
    const StrategyId id = parse_strategy(o.strategy);
    tag = id.str();
    controls = build_strategy(id, b);
  } else {
    const SweepFamily fam = benchmark_family(o.strategy);
    tag = fam.strategy;
    slot = fam.sweep_slot;
    const VertexSet vs = vertices_from_bounds(b);
    for (Vertex v : fam.order) controls.push_back(vs.get(v));
  }
  std::vector<double> u1;
  for (const Vec2& u : controls) u1.push_back(u(0));
  if (o.slot > 0) slot = o.slot - 1;
  if (slot >= static_cast<int>(controls.size())) {
    throw std::invalid_argument("sweep slot exceeds segment count");
  }

  const bool tau_sweep = !o.tau_grid.empty();
  std::vector<double> grid;
  if (tau_sweep) {
    grid = parse_grid(o.tau_grid);
  } else if (!o.alpha_grid.empty()) {
    grid = parse_grid(o.alpha_grid);
  } else {
    if (slot < 0) {
      throw std::invalid_argument(
          "strategy has no free fraction to sweep; give --tau-grid "
          "(or --slot with --alpha-grid)");
    }
    for (int k = 1; k <= 6; ++k) grid.push_back(k * (1.0 / 12.0));
  }
  if (!tau_sweep && slot < 0) {
    throw std::invalid_argument(
        "strategy has no free fraction to sweep; use --slot to pick one");
  }
  if (!tau_sweep && extra_pins.count(slot)) {
    throw std::invalid_argument("sweep slot is already pinned");
  }

  // Structural check up front: grid points must leave the two linear
  // constraints a solvable system, else every row would fail identically.
  {
    const std::size_t pinned_n = extra_pins.size() + (tau_sweep ? 0 : 1);
    if (controls.size() - pinned_n > 2) {
      throw std::invalid_argument(
          "underdetermined sweep: pin " +
          std::to_string(controls.size() - pinned_n - 2) +
          " more fraction(s) with --pin");
    }
  }

  std::vector<CaseResult> rows;
  for (double v : grid) {
    std::map<int, double> pins = extra_pins;
    double tau = o.tau;
    std::string label;
    if (tau_sweep) {
      tau = v;
      label = tag + " tau=" + format_sig(v);
    } else {
      pins[slot] = v;
      label = tag + " a" + std::to_string(slot + 1) + "=" + format_sig(v);
    }
    CaseResult row;
    try {
      const Schedule s =
          make_schedule(tau, controls, solve_alphas(u1, pins, o.u1_bar));
      row = solve_row(p, label, s, o.steps);
    } catch (const std::exception& e) {
      row.label = label;
      row.status = std::string("infeasible: ") + e.what();
      row.defect = std::nan("");
      row.cost = std::nan("");
      row.iso_average = std::nan("");
    }
    rows.push_back(std::move(row));
  }

  if (!tau_sweep) {
    bool monotone = true;
    int compared = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      if (rows[i - 1].status != "ok" || rows[i].status != "ok") continue;
      ++compared;
      if (!(rows[i].cost > rows[i - 1].cost)) monotone = false;
    }
    if (compared > 0) {
      std::cerr << "J strictly increasing along sweep: "
                << (monotone ? "yes" : "no") << "\n";
    }
  }

  write_output(o, o.format == "json" ? case_results_to_json(rows)
                                     : case_results_to_csv(rows));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Periodic bang-bang schedules for a two-state reactor model"};
  app.require_subcommand(1);

  CLI::App* tbl = app.add_subcommand(
      "table1", "solve every benchmark row and emit the result table");
  add_common(tbl, o);

  CLI::App* solve = app.add_subcommand(
      "solve", "solve one schedule for its periodic orbit and cost");
  add_common(solve, o);
  solve->add_option("--strategy", o.strategy,
                    "cycle tag C1..C8, optionally +rotK");
  solve->add_option("--case", o.case_label, "benchmark row label, e.g. C5r3");
  solve->add_option("--pin", o.pins,
                    "pin a fraction, 1-based: --pin 3=1/12 (repeatable)");

  CLI::App* sim = app.add_subcommand(
      "simulate", "integrate a schedule from a state and export the trajectory");
  add_common(sim, o);
  sim->add_option("--schedule", o.schedule_path, "schedule JSON file")
      ->required();
  sim->add_option("--x0", o.x0_text, "initial state x1,x2")
      ->capture_default_str();

  CLI::App* sweep = app.add_subcommand(
      "sweep", "solve a strategy across a grid of one free parameter");
  add_common(sweep, o);
  sweep->add_option("--strategy", o.strategy, "cycle tag C1..C8")->required();
  sweep->add_option("--alpha-grid", o.alpha_grid,
                    "fraction grid, a:b:n or v1,v2,... (default twelfths)");
  sweep->add_option("--tau-grid", o.tau_grid, "period grid, a:b:n or v1,v2,...");
  sweep->add_option("--pin", o.pins,
                    "pin a fraction, 1-based: --pin 4=5/12 (repeatable)");
  sweep->add_flag("--nominal", o.nominal,
                  "sweep the printed strategy order instead of the "
                  "benchmark family");
  sweep->add_option("--slot", o.slot, "1-based segment to sweep");

  CLI::App* strat = app.add_subcommand(
      "strategies", "list strategies with their feasible fraction families");
  add_common(strat, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (tbl->parsed()) return cmd_table1(o);
    if (solve->parsed()) return cmd_solve(o);
    if (sim->parsed()) return cmd_simulate(o);
    if (sweep->parsed()) return cmd_sweep(o);
    if (strat->parsed()) return cmd_strategies(o);
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
