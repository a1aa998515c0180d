#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cstrcycle/cases.hpp"
#include "cstrcycle/fliess.hpp"
#include "cstrcycle/model.hpp"
#include "cstrcycle/schedule.hpp"
#include "cstrcycle/sim.hpp"
#include "cstrcycle/solver.hpp"

namespace cstrcycle {

// Shortest decimal form with the given significant digits; '.' separator.
std::string format_sig(double v, int digits = 12);

// Parameter files hold either dimensionless constants ({"gamma", ...}) or
// plant data ({"activation_energy", ...}, converted on load); the key set
// decides. Throws std::runtime_error on unreadable files or bad JSON.
ModelParams params_from_json_file(const std::string& path);
std::string params_to_json(const ModelParams& m);

// {"tau": t, "segments": [{"alpha": a, "u1": p, "u2": q}, ...]}
Schedule schedule_from_json(const std::string& text);
Schedule schedule_from_json_file(const std::string& path);
std::string schedule_to_json(const Schedule& s);

// {"x0": [a, b], "defect": d, "cost": J, "method": "...", "schedule": {...}}
std::string solution_to_json(const PeriodicSolution& sol);

// {"t": ..., "values": {"0": V_0, ..., "222": V_222}}
std::string integrals_to_json(const IteratedIntegrals& ii);

// Row tables (benchmark runs and sweeps) in both formats. The CSV carries one
// header line and blank cells for absent fractions.
std::string case_results_to_csv(const std::vector<CaseResult>& rows);
std::string case_results_to_json(const std::vector<CaseResult>& rows);

// Strategy catalogue (id, vertex order, fraction family) in both formats.
std::string strategies_to_csv(const std::vector<StrategyInfo>& infos);
std::string strategies_to_json(const std::vector<StrategyInfo>& infos);

// header t,x1,x2,u1,u2,cost_integrand; one row per sample; 12 significant
// digits; '\n' line endings.
void write_trajectory_csv(std::ostream& os, const Trajectory& t);

}  // namespace cstrcycle
