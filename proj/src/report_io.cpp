#include "schedsim/report_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace schedsim {

namespace {

// Locale-independent shortest-round-trip formatting.
std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  double back;
  std::sscanf(buf, "%lf", &back);
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[32];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

}  // namespace

std::vector<OutputRecord> flatten(const RunReport& report,
                                  const std::string& sweep_parameter,
                                  std::optional<double> sweep_value) {
  std::vector<OutputRecord> out;
  for (const AlgorithmReport& ar : report.algorithms) {
    if (!ar.ok) continue;
    const Algorithm algo = ar.algo;
    for (std::size_t i = 0; i < ar.eval.size(); ++i) {
      OutputRecord rec;
      rec.scenario = report.label;
      rec.sweep_parameter = sweep_parameter;
      rec.sweep_value = sweep_value;
      rec.algorithm = to_string(algo);
      rec.scheduler = static_cast<int>(i);
      rec.objective_value = objective_of(algo, ar.eval[i]);
      rec.response_time = ar.eval[i].max_cost;
      rec.fairness_index = ar.fairness;
      rec.converged = ar.sched.converged;
      rec.cycles_used = ar.sched.cycles_used;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<OutputRecord> flatten_sweep(const std::vector<RunReport>& reports,
                                        const SweepSpec& sweep) {
  std::vector<OutputRecord> out;
  for (std::size_t k = 0; k < reports.size(); ++k) {
    auto recs = flatten(reports[k], to_string(sweep.parameter), sweep.values[k]);
    out.insert(out.end(), recs.begin(), recs.end());
  }
  return out;
}

void write_csv(std::ostream& os, const std::vector<OutputRecord>& records) {
  os << "scenario,sweep_parameter,sweep_value,algorithm,scheduler,"
        "objective_value,response_time,fairness_index,converged,cycles_used\n";
  for (const OutputRecord& r : records) {
    os << r.scenario << ',' << r.sweep_parameter << ','
       << (r.sweep_value ? fmt(*r.sweep_value) : "") << ',' << r.algorithm
       << ',' << r.scheduler << ',' << fmt(r.objective_value) << ','
       << fmt(r.response_time) << ',' << fmt(r.fairness_index) << ','
       << (r.converged ? "true" : "false") << ',' << r.cycles_used << '\n';
  }
}

void write_jsonl(std::ostream& os, const std::vector<OutputRecord>& records) {
  for (const OutputRecord& r : records) {
    nlohmann::json j;
    j["scenario"] = r.scenario;
    if (!r.sweep_parameter.empty()) {
      j["sweep_parameter"] = r.sweep_parameter;
      j["sweep_value"] = *r.sweep_value;
    }
    j["algorithm"] = r.algorithm;
    j["scheduler"] = r.scheduler;
    j["objective_value"] = r.objective_value;
    j["response_time"] = r.response_time;
    j["fairness_index"] = r.fairness_index;
    j["converged"] = r.converged;
    j["cycles_used"] = r.cycles_used;
    os << j.dump() << '\n';
  }
}

bool any_failed(const RunReport& report) {
  for (const auto& ar : report.algorithms)
    if (!ar.ok) return true;
  return false;
}

bool any_unconverged(const RunReport& report) {
  for (const auto& ar : report.algorithms)
    if (ar.ok && !ar.sched.converged) return true;
  return false;
}

}  // namespace schedsim
