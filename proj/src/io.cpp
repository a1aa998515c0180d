#include "cstrcycle/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace cstrcycle {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const std::exception& e) {
    throw std::runtime_error("bad JSON in " + origin + ": " + e.what());
  }
}

double num(const json& j, const char* key, const std::string& origin) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw std::runtime_error(origin + ": missing numeric key '" + key + "'");
  }
  return j[key].get<double>();
}

// NaN has no JSON representation; unfilled numbers become null.
json num_or_null(double v) {
  if (std::isfinite(v)) return json(v);
  return json(nullptr);
}

json alphas_json(const std::vector<double>& alphas) {
  json arr = json::array();
  for (double a : alphas) arr.push_back(a);
  return arr;
}

json schedule_json(const Schedule& s) {
  json out;
  out["tau"] = s.tau;
  json segs = json::array();
  for (std::size_t j = 0; j < s.size(); ++j) {
    segs.push_back({{"alpha", s.alphas[j]},
                    {"u1", s.controls[j](0)},
                    {"u2", s.controls[j](1)}});
  }
  out["segments"] = std::move(segs);
  return out;
}

void csv_cell(std::string& out, double v) {
  if (std::isfinite(v)) out += format_sig(v);
}

}  // namespace

std::string format_sig(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
  return buf;
}

ModelParams params_from_json_file(const std::string& path) {
  const json j = parse(read_file(path), path);
  if (!j.is_object()) throw std::runtime_error(path + ": expected a JSON object");

  if (j.contains("gamma")) {
    ModelParams m;
    for (const auto& item : j.items()) {
      const std::string& key = item.key();
      if (key == "gamma") m.gamma = num(j, "gamma", path);
      else if (key == "k1") m.k1 = num(j, "k1", path);
      else if (key == "k2") m.k2 = num(j, "k2", path);
      else if (key == "St") m.St = num(j, "St", path);
      else if (key == "delta") m.delta = num(j, "delta", path);
      else if (key == "n_bar") m.n_bar = num(j, "n_bar", path);
      else throw std::runtime_error(path + ": unknown key '" + key + "'");
    }
    return m;
  }
  if (j.contains("activation_energy")) {
    PhysicalParams p;
    double St = 0.0;
    double delta = 0.0;
    for (const auto& item : j.items()) {
      const std::string& key = item.key();
      if (key == "activation_energy") p.activation_energy = num(j, key.c_str(), path);
      else if (key == "gas_constant") p.gas_constant = num(j, key.c_str(), path);
      else if (key == "collision_factor") p.collision_factor = num(j, key.c_str(), path);
      else if (key == "reaction_heat") p.reaction_heat = num(j, key.c_str(), path);
      else if (key == "rho_cp") p.rho_cp = num(j, key.c_str(), path);
      else if (key == "volume") p.volume = num(j, key.c_str(), path);
      else if (key == "flow_rate_ss") p.flow_rate_ss = num(j, key.c_str(), path);
      else if (key == "conc_out_ss") p.conc_out_ss = num(j, key.c_str(), path);
      else if (key == "conc_in_ss") p.conc_in_ss = num(j, key.c_str(), path);
      else if (key == "temp_ss") p.temp_ss = num(j, key.c_str(), path);
      else if (key == "reaction_order") p.reaction_order = num(j, key.c_str(), path);
      else if (key == "St") St = num(j, key.c_str(), path);
      else if (key == "delta") delta = num(j, key.c_str(), path);
      else throw std::runtime_error(path + ": unknown key '" + key + "'");
    }
    return dimensionless_from_physical(p, St, delta);
  }
  throw std::runtime_error(
      path + ": expected dimensionless keys (gamma, ...) or plant keys "
             "(activation_energy, ...)");
}

std::string params_to_json(const ModelParams& m) {
  json j;
  j["gamma"] = m.gamma;
  j["k1"] = m.k1;
  j["k2"] = m.k2;
  j["St"] = m.St;
  j["delta"] = m.delta;
  j["n_bar"] = m.n_bar;
  return j.dump(2) + "\n";
}

Schedule schedule_from_json(const std::string& text) {
  const json j = parse(text, "schedule");
  if (!j.is_object() || !j.contains("segments") || !j["segments"].is_array()) {
    throw std::runtime_error("schedule: expected {\"tau\", \"segments\": [...]}");
  }
  const double tau = num(j, "tau", "schedule");
  std::vector<Vec2> controls;
  std::vector<double> alphas;
  for (const json& seg : j["segments"]) {
    alphas.push_back(num(seg, "alpha", "schedule segment"));
    controls.emplace_back(num(seg, "u1", "schedule segment"),
                          num(seg, "u2", "schedule segment"));
  }
  return make_schedule(tau, controls, alphas);
}

Schedule schedule_from_json_file(const std::string& path) {
  const json j = parse(read_file(path), path);
  return schedule_from_json(j.dump());
}

std::string schedule_to_json(const Schedule& s) {
  return schedule_json(s).dump(2) + "\n";
}

std::string solution_to_json(const PeriodicSolution& sol) {
  json j;
  j["x0"] = {sol.x0(0), sol.x0(1)};
  j["defect"] = sol.defect;
  j["cost"] = sol.cost;
  j["method"] = method_name(sol.method);
  j["schedule"] = schedule_json(sol.schedule);
  return j.dump(2) + "\n";
}

std::string integrals_to_json(const IteratedIntegrals& ii) {
  json j;
  j["t"] = ii.t;
  json vals = json::array();
  for (const Word& w : all_words()) {
    vals.push_back({{"word", w.str()}, {"value", ii.value(w)}});
  }
  j["integrals"] = std::move(vals);
  return j.dump(2) + "\n";
}

std::string case_results_to_csv(const std::vector<CaseResult>& rows) {
  std::string out =
      "case,alpha1,alpha2,alpha3,alpha4,x0_exp_1,x0_exp_2,x0_1,x0_2,defect,J,"
      "iso_avg,status\n";
  for (const CaseResult& r : rows) {
    out += r.label;
    for (std::size_t k = 0; k < 4; ++k) {
      out += ',';
      if (k < r.alphas.size()) out += format_sig(r.alphas[k]);
    }
    out += ',';
    if (r.expansion_ok) out += format_sig(r.x0_expansion(0));
    out += ',';
    if (r.expansion_ok) out += format_sig(r.x0_expansion(1));
    out += ',';
    if (r.status == "ok") out += format_sig(r.x0(0));
    out += ',';
    if (r.status == "ok") out += format_sig(r.x0(1));
    out += ',';
    csv_cell(out, r.defect);
    out += ',';
    csv_cell(out, r.cost);
    out += ',';
    csv_cell(out, r.iso_average);
    out += ",\"" + r.status + "\"\n";
  }
  return out;
}

std::string case_results_to_json(const std::vector<CaseResult>& rows) {
  json arr = json::array();
  for (const CaseResult& r : rows) {
    json j;
    j["case"] = r.label;
    j["alphas"] = alphas_json(r.alphas);
    if (r.expansion_ok) {
      j["x0_expansion"] = {r.x0_expansion(0), r.x0_expansion(1)};
    } else {
      j["x0_expansion"] = nullptr;
    }
    if (r.status == "ok") {
      j["x0"] = {r.x0(0), r.x0(1)};
    } else {
      j["x0"] = nullptr;
    }
    j["defect"] = num_or_null(r.defect);
    j["cost"] = num_or_null(r.cost);
    j["iso_average"] = num_or_null(r.iso_average);
    j["status"] = r.status;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string strategies_to_csv(const std::vector<StrategyInfo>& infos) {
  std::string out = "id,segments,order,feasible,degenerate,base_alphas,free\n";
  for (const StrategyInfo& info : infos) {
    out += info.id.str();
    out += ',' + std::to_string(info.vertices.size());
    out += ',';
    for (std::size_t i = 0; i < info.vertices.size(); ++i) {
      if (i) out += '|';
      out += vertex_name(info.vertices[i]);
    }
    out += info.family.feasible ? ",yes" : ",no";
    out += info.family.degenerate ? ",yes" : ",no";
    out += ',';
    for (std::size_t i = 0; i < info.family.base.size(); ++i) {
      if (i) out += '|';
      out += format_sig(info.family.base[i], 6);
    }
    out += ',';
    for (std::size_t i = 0; i < info.family.free.size(); ++i) {
      if (i) out += ' ';
      out += "a" + std::to_string(info.family.free[i] + 1) + " in [" +
             format_sig(info.family.bounds[i][0], 6) + " " +
             format_sig(info.family.bounds[i][1], 6) + "]";
    }
    out += '\n';
  }
  return out;
}

std::string strategies_to_json(const std::vector<StrategyInfo>& infos) {
  json arr = json::array();
  for (const StrategyInfo& info : infos) {
    json j;
    j["id"] = info.id.str();
    json order = json::array();
    for (Vertex v : info.vertices) order.push_back(vertex_name(v));
    j["order"] = std::move(order);
    j["feasible"] = info.family.feasible;
    j["degenerate"] = info.family.degenerate;
    json forced = json::array();
    for (int i : info.family.forced) forced.push_back(i + 1);
    j["forced"] = std::move(forced);
    json free = json::array();
    for (std::size_t i = 0; i < info.family.free.size(); ++i) {
      free.push_back({{"index", info.family.free[i] + 1},
                      {"min", info.family.bounds[i][0]},
                      {"max", info.family.bounds[i][1]}});
    }
    j["free"] = std::move(free);
    j["base_alphas"] = alphas_json(info.family.base);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void write_trajectory_csv(std::ostream& os, const Trajectory& t) {
  os << "t,x1,x2,u1,u2,cost_integrand\n";
  for (const Sample& s : t.samples) {
    os << format_sig(s.t) << ',' << format_sig(s.x(0)) << ','
       << format_sig(s.x(1)) << ',' << format_sig(s.u(0)) << ','
       << format_sig(s.u(1)) << ',' << format_sig((s.x(0) + 1.0) * s.u(1))
       << '\n';
  }
}

}  // namespace cstrcycle
