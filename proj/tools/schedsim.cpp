#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "schedsim/queue_sim.hpp"
#include "schedsim/report_io.hpp"
#include "schedsim/scenario_json.hpp"

namespace {

using namespace schedsim;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitUnconverged = 4;

bool logging_enabled() {
  const char* v = std::getenv("SCHEDSIM_LOG");
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

void log_report(const RunReport& report) {
  if (!logging_enabled()) return;
  for (const auto& ar : report.algorithms) {
    std::cerr << report.label << " " << to_string(ar.algo) << ": ";
    if (!ar.ok) {
      std::cerr << "failed (" << ar.error << ")\n";
      continue;
    }
    std::cerr << (ar.sched.converged ? "converged" : "not converged") << " in "
              << ar.sched.cycles_used << " cycles, fairness " << ar.fairness
              << "\n";
  }
}

std::vector<Algorithm> parse_algo_filter(const std::string& csv) {
  std::vector<Algorithm> out;
  std::stringstream ss(csv);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "ps") out.push_back(Algorithm::PS);
    else if (tok == "bs") out.push_back(Algorithm::BS);
    else if (tok == "gs") out.push_back(Algorithm::GS);
    else throw std::invalid_argument("unknown algorithm '" + tok + "'");
  }
  if (out.empty()) throw std::invalid_argument("empty algorithm list");
  return out;
}

int emit(const std::vector<OutputRecord>& records, const std::string& out_path,
         const std::string& format) {
  std::ostringstream buf;
  if (format == "jsonl") write_jsonl(buf, records);
  else write_csv(buf, records);
  if (out_path.empty() || out_path == "-") {
    std::cout << buf.str();
    return kExitOk;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot write '" << out_path << "'\n";
    return kExitConfig;
  }
  os << buf.str();
  return kExitOk;
}

struct CommonOpts {
  std::string out = "-";
  std::string format = "csv";
  int jobs = 1;
};

int finish_run(const std::vector<RunReport>& reports,
               const std::vector<OutputRecord>& records,
               const CommonOpts& opts) {
  for (const auto& r : reports) log_report(r);
  const int rc = emit(records, opts.out, opts.format);
  if (rc != kExitOk) return rc;
  for (const auto& r : reports) {
    if (any_failed(r)) return kExitInfeasible;
  }
  for (const auto& r : reports) {
    if (any_unconverged(r)) return kExitUnconverged;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Task-slicing scheduler experiments for heterogeneous M/G/1 clusters"};
  app.require_subcommand(1);

  CommonOpts opts;
  app.add_option("--out", opts.out, "Output path ('-' for stdout)");
  app.add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--jobs", opts.jobs, "Parallel sweep points")
      ->check(CLI::PositiveNumber);

  // run
  auto* run = app.add_subcommand("run", "Run one scenario");
  std::string scenario_name, algo_csv;
  run->add_option("--scenario", scenario_name, "Builtin name or JSON path")
      ->required();
  run->add_option("--algo", algo_csv, "Comma-separated subset of ps,bs,gs");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Sweep one parameter of a scenario");
  std::string sweep_scenario, sweep_param, sweep_algo_csv, values_csv;
  double from = 0.0, to = 0.0;
  int steps = 0;
  sweep->add_option("--scenario", sweep_scenario, "Builtin name or JSON path")
      ->required();
  sweep->add_option("--param", sweep_param,
                    "load | scheduler_count | node_count | bandwidth")
      ->required();
  sweep->add_option("--values", values_csv, "Explicit comma-separated values");
  sweep->add_option("--from", from, "Grid start");
  sweep->add_option("--to", to, "Grid end");
  sweep->add_option("--steps", steps, "Grid point count");
  sweep->add_option("--algo", sweep_algo_csv, "Comma-separated subset of ps,bs,gs");

  // validate-queue
  auto* vq = app.add_subcommand("validate-queue",
                                "Compare the M/G/1 formula against simulation");
  double vq_lambda = 0.5, vq_mu = 1.0;
  std::string vq_kind = "exponential";
  long long vq_count = 1'000'000;
  std::uint64_t vq_seed = 1;
  vq->add_option("--lambda", vq_lambda, "Arrival rate, jobs/s");
  vq->add_option("--mu", vq_mu, "Service rate, jobs/s");
  vq->add_option("--kind", vq_kind, "Service distribution")
      ->check(CLI::IsMember({"exponential", "deterministic"}));
  vq->add_option("--count", vq_count, "Jobs to simulate");
  vq->add_option("--seed", vq_seed, "RNG seed");

  auto* ls = app.add_subcommand("list-scenarios", "List builtin scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (ls->parsed()) {
      for (const auto& [name, s] : builtin_scenarios()) {
        std::cout << name << ": " << s.phi.size() << " schedulers, "
                  << s.mu.size() << " nodes, rho=" << s.rho << "\n";
      }
      return kExitOk;
    }

    if (run->parsed()) {
      Scenario s = resolve_scenario(scenario_name);
      if (!algo_csv.empty()) s.algorithms = parse_algo_filter(algo_csv);
      s.validate();
      const RunReport report = run_scenario(s);
      return finish_run({report}, flatten(report), opts);
    }

    if (sweep->parsed()) {
      SweepSpec sw;
      sw.base = resolve_scenario(sweep_scenario);
      if (!sweep_algo_csv.empty())
        sw.base.algorithms = parse_algo_filter(sweep_algo_csv);
      if (!sweep_parameter_from_string(sweep_param, sw.parameter))
        throw std::invalid_argument("unknown sweep parameter '" + sweep_param + "'");
      if (!values_csv.empty()) {
        std::stringstream ss(values_csv);
        std::string tok;
        while (std::getline(ss, tok, ',')) sw.values.push_back(std::stod(tok));
      } else if (steps > 0) {
        for (int k = 0; k < steps; ++k) {
          sw.values.push_back(
              steps == 1 ? from : from + (to - from) * k / (steps - 1));
        }
      }
      if (sw.values.empty())
        throw std::invalid_argument("sweep needs --values or --from/--to/--steps");
      sw.validate();
      const auto reports = run_sweep(sw, opts.jobs);
      return finish_run(reports, flatten_sweep(reports, sw), opts);
    }

    if (vq->parsed()) {
      SimSpec spec;
      spec.lambda = vq_lambda;
      spec.mu = vq_mu;
      spec.kind = vq_kind == "deterministic" ? ServiceKind::deterministic
                                             : ServiceKind::exponential;
      spec.jobs = vq_count;
      spec.seed = vq_seed;
      try {
        spec.validate();
      } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return kExitInfeasible;
      }
      const double analytic = analytic_mean_time(spec);
      const SimResult res = simulate_queue(spec);
      const double z = (res.mean - analytic) / res.std_error;
      std::ostringstream buf;
      buf << "rng=" << res.rng << " seed=" << vq_seed << "\n"
          << "analytic_mean=" << analytic << "\n"
          << "empirical_mean=" << res.mean << "\n"
          << "std_error=" << res.std_error << "\n"
          << "z_score=" << z << "\n";
      if (opts.out.empty() || opts.out == "-") {
        std::cout << buf.str();
      } else {
        std::ofstream os(opts.out, std::ios::binary);
        if (!os) {
          std::cerr << "error: cannot write '" << opts.out << "'\n";
          return kExitConfig;
        }
        os << buf.str();
      }
      return kExitOk;
    }
  } catch (const std::domain_error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
