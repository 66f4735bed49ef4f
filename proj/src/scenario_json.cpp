#include "schedsim/scenario_json.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace schedsim {

namespace {

using nlohmann::json;

MatrixXd matrix_or_broadcast(const json& j, int n, int m, const char* field) {
  if (j.is_number()) return MatrixXd::Constant(n, m, j.get<double>());
  if (!j.is_array())
    throw std::invalid_argument(std::string("scenario: ") + field +
                                " must be a number or a matrix");
  MatrixXd out(n, m);
  if (static_cast<int>(j.size()) != n)
    throw std::invalid_argument(std::string("scenario: ") + field +
                                " needs one row per scheduler");
  for (int i = 0; i < n; ++i) {
    const auto& row = j.at(i);
    if (static_cast<int>(row.size()) != m)
      throw std::invalid_argument(std::string("scenario: ") + field +
                                  " needs one column per node");
    for (int k = 0; k < m; ++k) out(i, k) = row.at(k).get<double>();
  }
  return out;
}

Algorithm algorithm_from_string(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(c));
  if (s == "ps") return Algorithm::PS;
  if (s == "bs") return Algorithm::BS;
  if (s == "gs") return Algorithm::GS;
  throw std::invalid_argument("scenario: unknown algorithm '" + s + "'");
}

}  // namespace

Scenario scenario_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& ex) {
    throw std::invalid_argument(std::string("scenario: bad JSON: ") + ex.what());
  }

  Scenario s;
  s.label = j.value("label", "custom");

  const auto& nodes = j.at("nodes");
  const auto& schedulers = j.at("schedulers");
  const int m = static_cast<int>(nodes.size());
  const int n = static_cast<int>(schedulers.size());
  if (m < 1 || n < 1)
    throw std::invalid_argument("scenario: need nodes and schedulers");
  s.mu.resize(m);
  for (int k = 0; k < m; ++k) s.mu(k) = nodes.at(k).at("mu").get<double>();
  s.phi.resize(n);
  for (int k = 0; k < n; ++k) s.phi(k) = schedulers.at(k).at("phi").get<double>();

  s.rho = j.at("rho").get<double>();
  s.task_bits = j.at("task_megabits").get<double>() * 1e6;

  const json delay = j.value("delay_seconds", json(0.5));
  const json bw = j.value("bandwidth_kbps", json(100.0));
  if (delay.is_number() && bw.is_number()) {
    s.uniform_links = true;
    s.delay_s = delay.get<double>();
    s.bandwidth_bps = bw.get<double>() * 1e3;
  } else {
    s.uniform_links = false;
    s.delay = matrix_or_broadcast(delay, n, m, "delay_seconds");
    s.bandwidth = matrix_or_broadcast(bw, n, m, "bandwidth_kbps") * 1e3;
  }

  if (j.contains("algorithms")) {
    s.algorithms.clear();
    for (const auto& a : j.at("algorithms"))
      s.algorithms.push_back(algorithm_from_string(a.get<std::string>()));
  }

  if (j.contains("solver")) {
    const auto& sv = j.at("solver");
    s.solver.p0 = sv.value("p0", s.solver.p0);
    s.solver.escalation = sv.value("r", s.solver.escalation);
    s.solver.p_cap = sv.value("cap", s.solver.p_cap);
    s.solver.eps = sv.value("eps", s.solver.eps);
    s.max_cycle = sv.value("max_cycle", s.max_cycle);
    s.eps = s.solver.eps;
  }

  s.validate();
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("scenario: cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return scenario_from_json(buf.str());
}

Scenario resolve_scenario(const std::string& name_or_path) {
  const auto& builtins = builtin_scenarios();
  const auto it = builtins.find(name_or_path);
  if (it != builtins.end()) return it->second;
  return load_scenario_file(name_or_path);
}

std::string scenario_to_json(const Scenario& s) {
  json j;
  j["label"] = s.label;
  j["nodes"] = json::array();
  for (int k = 0; k < s.mu.size(); ++k) j["nodes"].push_back({{"mu", s.mu(k)}});
  j["schedulers"] = json::array();
  for (int k = 0; k < s.phi.size(); ++k)
    j["schedulers"].push_back({{"phi", s.phi(k)}});
  j["rho"] = s.rho;
  j["task_megabits"] = s.task_bits / 1e6;
  if (s.uniform_links) {
    j["delay_seconds"] = s.delay_s;
    j["bandwidth_kbps"] = s.bandwidth_bps / 1e3;
  } else {
    json d = json::array(), b = json::array();
    for (int i = 0; i < s.delay.rows(); ++i) {
      json dr = json::array(), br = json::array();
      for (int k = 0; k < s.delay.cols(); ++k) {
        dr.push_back(s.delay(i, k));
        br.push_back(s.bandwidth(i, k) / 1e3);
      }
      d.push_back(dr);
      b.push_back(br);
    }
    j["delay_seconds"] = d;
    j["bandwidth_kbps"] = b;
  }
  json algos = json::array();
  for (const Algorithm a : s.algorithms) {
    std::string name = to_string(a);
    for (char& c : name) c = static_cast<char>(std::tolower(c));
    algos.push_back(name);
  }
  j["algorithms"] = algos;
  j["solver"] = {{"p0", s.solver.p0},
                 {"r", s.solver.escalation},
                 {"cap", s.solver.p_cap},
                 {"eps", s.solver.eps},
                 {"max_cycle", s.max_cycle}};
  return j.dump(2);
}

}  // namespace schedsim
