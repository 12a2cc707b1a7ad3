// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: run Monte Carlo experiments, solve dumped
// instances, and inspect band plans described by config files.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specsense/bandplan.hpp"
#include "specsense/config.hpp"
#include "specsense/csv.hpp"
#include "specsense/detect.hpp"
#include "specsense/harness.hpp"
#include "specsense/sampling.hpp"
#include "specsense/solvers.hpp"
#include "specsense/version.hpp"

namespace fs = std::filesystem;
using namespace specsense;

namespace {

void print_plan(const BandPlan& plan, std::ostream& os) {
  os << "bins=" << plan.n_bins() << " span=[" << plan.f_min_hz() << ", "
     << plan.f_max_hz() << "] Hz bin_width=" << plan.bin_width_hz() << " Hz\n";
  os << "section  label            bins        f_lo_hz        f_hi_hz  active\n";
  for (std::size_t k = 0; k < plan.section_count(); ++k) {
    const Section& s = plan.sections()[k];
    SectionRange r = plan.range(k);
    char line[160];
    std::snprintf(line, sizeof(line), "%7zu  %-12s %4d+%-4d %14.6g %14.6g  %s\n",
                  k + 1, s.label.c_str(), r.start_bin, r.length, s.f_lo_hz,
                  s.f_hi_hz,
                  s.active_truth ? (*s.active_truth ? "yes" : "no") : "?");
    os << line;
  }
}

void print_aggregate(const ExperimentResult& result, std::ostream& os) {
  const AggregateReport& agg = result.aggregate;
  os << "baseline=" << agg.baseline << " normalize=" << to_string(agg.normalize)
     << "\n";
  for (const std::string& name : agg.solver_order) {
    const SolverSummary& s = agg.solvers.at(name);
    os << name << ": trials=" << s.trials_included << "/" << s.trials_total
       << " convergence=" << s.convergence_rate
       << " mean_iters=" << s.mean_iterations;
    auto t = result.mean_wall_time_s.find(name);
    if (t != result.mean_wall_time_s.end())
      os << " mean_solve_s=" << t->second;
    os << "\n  mean energies:";
    for (double e : s.mean_energies) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), " %.4f", e);
      os << buf;
    }
    os << "\n";
    if (!s.ebr_vs_baseline_pct.empty()) {
      os << "  ebr vs " << agg.baseline << " (%):";
      for (double e : s.ebr_vs_baseline_pct) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), " %.1f", e);
        os << buf;
      }
      os << "\n";
    }
  }
}

int run_simulate(const std::string& config_path, const std::string& out_dir,
                 int trials_override, long long seed_override,
                 const std::vector<std::string>& solver_filter, bool quiet) {
  ExperimentConfig cfg = load_experiment_config(config_path);
  if (trials_override > 0) cfg.trials = trials_override;
  if (seed_override >= 0) cfg.master_seed = static_cast<std::uint64_t>(seed_override);
  if (!solver_filter.empty()) {
    std::vector<SolverConfig> kept;
    for (const std::string& want : solver_filter) {
      auto it = std::find_if(cfg.solvers.begin(), cfg.solvers.end(),
                             [&](const SolverConfig& s) { return solver_label(s) == want; });
      if (it == cfg.solvers.end())
        throw ConfigError("--solver '" + want + "' does not name a solver in " + config_path);
      kept.push_back(*it);
    }
    cfg.solvers = kept;
    if (!cfg.baseline.empty()) {
      bool have = std::any_of(kept.begin(), kept.end(), [&](const SolverConfig& s) {
        return solver_label(s) == cfg.baseline;
      });
      if (!have) cfg.baseline.clear();
    }
  }

  fs::create_directories(out_dir);
  ExperimentResult result = run_experiment(cfg);

  fs::path out(out_dir);
  write_trials_csv((out / "trials.csv").string(), result.records, *cfg.plan);
  write_aggregate_csv((out / "aggregate.csv").string(), result.aggregate, *cfg.plan);
  write_summary_csv((out / "summary.csv").string(), result.aggregate);
  write_timing_csv((out / "timing.csv").string(), result);

  std::vector<std::pair<std::string, Eigen::VectorXcd>> columns;
  columns.emplace_back("truth", result.truth0.values);
  for (const auto& [name, rec] : result.recoveries0)
    columns.emplace_back(name, rec);
  write_spectrum_plotdata((out / "spectrum.csv").string(), *cfg.plan, columns);

  write_solve_dump((out / "trial0_solve.cfg").string(),
                   (out / "trial0_y.csv").string(), cfg, result.op0, result.y0);

  if (!quiet) {
    print_aggregate(result, std::cout);
    std::cout << "wrote " << out_dir
              << "/{trials,aggregate,summary,timing,spectrum}.csv and trial0 dump\n";
  }
  return 0;
}

int run_solve(const std::string& config_path, const std::string& out_dir,
              bool quiet) {
  SolveInput input = load_solve_input(config_path);
  if (!out_dir.empty()) fs::create_directories(out_dir);

  SensingMap map(input.op, input.op.n());
  for (const SolverConfig& scfg : input.solvers) {
    SolveResult res = solve(map, input.y, input.plan, scfg);
    if (!quiet) {
      std::cout << solver_label(scfg) << ": objective=" << res.objective
                << " residual=" << res.residual_norm
                << " iterations=" << res.iterations
                << " converged=" << (res.converged ? "yes" : "no") << "\n";
      if (input.plan) {
        SubbandEnergies e =
            subband_energies(res.r_hat, *input.plan, NormalizeMode::total);
        std::cout << "  energies:";
        for (double v : e.values) {
          char buf[32];
          std::snprintf(buf, sizeof(buf), " %.4f", v);
          std::cout << buf;
        }
        std::cout << "\n";
      }
    }
    if (!out_dir.empty()) {
      std::vector<std::vector<std::string>> rows;
      rows.reserve(static_cast<std::size_t>(res.r_hat.values.size()));
      for (Eigen::Index i = 0; i < res.r_hat.values.size(); ++i) {
        rows.push_back({std::to_string(i), fmt_double(res.r_hat.values[i].real()),
                        fmt_double(res.r_hat.values[i].imag())});
      }
      fs::path file = fs::path(out_dir) / ("recovery_" + solver_label(scfg) + ".csv");
      write_csv_file(file.string(), {"index", "re", "im"}, rows);
      if (!quiet) std::cout << "  wrote " << file.string() << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compressive wideband spectrum sensing harness"};
  app.require_subcommand(1);

  bool quiet = false;
  app.add_flag("-q,--quiet", quiet, "suppress progress output");

  auto* sim = app.add_subcommand("simulate", "run a Monte Carlo experiment from a config file");
  std::string sim_config;
  std::string sim_out = "out";
  int sim_trials = 0;
  long long sim_seed = -1;
  std::vector<std::string> sim_solvers;
  sim->add_option("-c,--config", sim_config, "experiment config file")->required();
  sim->add_option("-o,--out", sim_out, "output directory");
  sim->add_option("-t,--trials", sim_trials, "override trial count");
  sim->add_option("-s,--seed", sim_seed, "override master seed");
  sim->add_option("--solver", sim_solvers, "restrict to named solvers");

  auto* slv = app.add_subcommand("solve", "solve a dumped instance");
  std::string slv_config;
  std::string slv_out;
  slv->add_option("-c,--config", slv_config, "solve config file")->required();
  slv->add_option("-o,--out", slv_out, "directory for recovery CSVs");

  auto* pln = app.add_subcommand("plan", "print the band plan from a config file");
  std::string pln_config;
  pln->add_option("-c,--config", pln_config, "band plan config file")->required();

  auto* ver = app.add_subcommand("version", "print version and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (ver->parsed()) {
      std::cout << kProjectName << " " << kVersion << "\n";
      return 0;
    }
    if (pln->parsed()) {
      print_plan(load_bandplan_file(pln_config), std::cout);
      return 0;
    }
    if (sim->parsed())
      return run_simulate(sim_config, sim_out, sim_trials, sim_seed, sim_solvers, quiet);
    if (slv->parsed()) return run_solve(slv_config, slv_out, quiet);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
