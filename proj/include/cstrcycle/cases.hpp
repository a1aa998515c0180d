#pragma once

#include <map>
#include <string>
#include <vector>

#include "cstrcycle/model.hpp"
#include "cstrcycle/schedule.hpp"
#include "cstrcycle/solver.hpp"

namespace cstrcycle {

// One benchmark row: a realized vertex order with the pinned fractions that
// reproduce the published operating point, plus the published anchor state
// and cost for regression. The realized order of a row is not always the
// nominal strategy order; the rows are data, keyed by how the published
// results were actually produced.
struct BenchmarkCase {
  std::string label;          // row label, e.g. "C5r3"
  std::string strategy;       // owning cycle shape, e.g. "C5"
  std::vector<Vertex> order;  // realized vertex sequence
  std::map<int, double> pinned;  // 0-based slot -> fraction
  Vec2 x0_ref;                // published anchor state (tau = 0.5)
  double J_ref;               // published period-averaged cost
};

// The 17 benchmark rows in published order, realized against the bounds.
std::vector<BenchmarkCase> table1_cases();

// Fractions of a row: the pinned slots plus the two solved from the linear
// constraints.
std::vector<double> case_alphas(const BenchmarkCase& c,
                                const ControlBounds& b = ControlBounds{},
                                double u1_bar = 1.0);

Schedule case_schedule(const BenchmarkCase& c, double tau,
                       const ControlBounds& b = ControlBounds{},
                       double u1_bar = 1.0);

// Pipeline output for one row. On solver failure the row carries the reason
// in status and NaNs in the unfilled numbers; a run never aborts on one row.
struct CaseResult {
  std::string label;
  std::vector<double> alphas;
  Vec2 x0_expansion = Vec2::Zero();
  bool expansion_ok = false;
  Vec2 x0 = Vec2::Zero();     // shooting-refined periodic point
  double defect = 0.0;
  double cost = 0.0;
  double iso_average = 0.0;   // (1/tau) integral of u1, exactness witness
  std::string status = "ok";
};

CaseResult run_case(const ModelParams& p, const BenchmarkCase& c,
                    double tau = 0.5, int steps_per_unit_time = 4000,
                    const NewtonConfig& cfg = {},
                    const ControlBounds& b = ControlBounds{},
                    double u1_bar = 1.0);

std::vector<CaseResult> run_table1(const ModelParams& p, double tau = 0.5,
                                   int steps_per_unit_time = 4000,
                                   const ControlBounds& b = ControlBounds{},
                                   double u1_bar = 1.0);

// Sweepable family of a cycle shape: the realized vertex order used by the
// benchmark rows together with the slot their published sweeps pin. Slot -1
// means the shape has no free fraction (two-segment cycles).
struct SweepFamily {
  std::string strategy;
  std::vector<Vertex> order;
  int sweep_slot = -1;
};

// Family for "C1".."C8"; throws std::invalid_argument for other tags.
SweepFamily benchmark_family(const std::string& tag);

}  // namespace cstrcycle
