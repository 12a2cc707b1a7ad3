// SPDX-License-Identifier: Apache-2.0
#include "specsense/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "specsense/config.hpp"
#include "specsense/csv.hpp"
#include "specsense/rng.hpp"

namespace specsense {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// per-trial stream tags; index-based so growing the trial count leaves
// earlier trials untouched
constexpr std::uint64_t kStreamSpectrum = 0;
constexpr std::uint64_t kStreamNoise = 1;
constexpr std::uint64_t kStreamOperator = 2;
constexpr std::uint64_t kCalibrationBase = std::uint64_t{1} << 40;

std::uint64_t trial_tag(std::uint64_t trial, std::uint64_t stream) {
  return trial * 8 + stream;
}

bool valid_label(const std::string& label) {
  if (label.empty()) return false;
  for (char c : label) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) return false;
  }
  return true;
}

// fills defaults (solver names, baseline) and checks the config invariants
void finalize_config(ExperimentConfig& cfg) {
  if (!cfg.plan) throw std::invalid_argument("experiment: no band plan");
  if (cfg.trials < 1) throw std::invalid_argument("experiment: trials must be >= 1");
  if (cfg.parallelism < 1)
    throw std::invalid_argument("experiment: parallelism must be >= 1");
  if (cfg.solvers.empty())
    throw std::invalid_argument("experiment: at least one solver is required");
  if (cfg.measurement.m < 1 || cfg.measurement.m > cfg.plan->n_bins())
    throw std::invalid_argument("experiment: measurement m must be in [1, n_bins]");
  if (cfg.detection.calibration_trials < 0)
    throw std::invalid_argument("experiment: calibration_trials must be >= 0");
  if (!(cfg.detection.false_alarm_rate >= 0.0 &&
        cfg.detection.false_alarm_rate <= 1.0))
    throw std::invalid_argument("experiment: false_alarm_rate must be in [0, 1]");

  std::vector<std::string> labels;
  for (SolverConfig& s : cfg.solvers) {
    if (s.name.empty()) s.name = to_string(s.program);
    if (!valid_label(s.name))
      throw std::invalid_argument("experiment: solver name '" + s.name +
                                  "' (use letters, digits, _ - .)");
    if (std::find(labels.begin(), labels.end(), s.name) != labels.end())
      throw std::invalid_argument("experiment: duplicate solver name '" +
                                  s.name + "'");
    labels.push_back(s.name);
  }
  if (cfg.baseline.empty()) cfg.baseline = labels.front();
  if (std::find(labels.begin(), labels.end(), cfg.baseline) == labels.end())
    throw std::invalid_argument("experiment: baseline '" + cfg.baseline +
                                "' is not a configured solver");

  // every active section needs a PSD range; throws otherwise
  expected_signal_power(*cfg.plan, cfg.signal);

  if (cfg.detection.calibration_trials > 0 &&
      !std::isfinite(cfg.signal.snr_db))
    throw std::invalid_argument(
        "experiment: detection calibration needs a finite SNR to set the noise level");
}

TimeSignal noise_only_signal(const ExperimentConfig& cfg, double sigma,
                             std::uint64_t seed) {
  int n = cfg.plan->n_bins();
  TimeSignal out;
  out.samples.resize(n);
  out.sample_rate_hz = cfg.plan->f_max_hz() - cfg.plan->f_min_hz();
  out.real_valued = cfg.signal.real_valued;
  Rng rng(seed);
  if (out.real_valued) {
    for (int i = 0; i < n; ++i) out.samples[i] = sigma * rng.normal();
  } else {
    double scale = sigma / std::sqrt(2.0);
    for (int i = 0; i < n; ++i) {
      auto [a, b] = rng.normal_pair();
      out.samples[i] = std::complex<double>(scale * a, scale * b);
    }
  }
  return out;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& input_cfg) {
  ExperimentConfig cfg = input_cfg;
  finalize_config(cfg);

  const int n = cfg.plan->n_bins();
  const int n_solvers = static_cast<int>(cfg.solvers.size());
  const int k_sections = cfg.plan->section_count();

  MeasurementOperator shared_op;
  if (!cfg.measurement.redraw_per_trial)
    shared_op = make_operator(
        cfg.measurement.kind, cfg.measurement.m, n,
        seed_derive(cfg.master_seed, trial_tag(0, kStreamOperator)));

  ExperimentResult result;

  // detection calibration: solve signal-absent measurements at the noise
  // level the signal trials will see, then take a per-solver quantile
  if (cfg.detection.calibration_trials > 0) {
    double power = expected_signal_power(*cfg.plan, cfg.signal);
    double sigma =
        std::sqrt(power / (n * std::pow(10.0, cfg.signal.snr_db / 10.0)));
    std::vector<std::vector<SubbandEnergies>> pools(n_solvers);
    for (int ct = 0; ct < cfg.detection.calibration_trials; ++ct) {
      TimeSignal noise = noise_only_signal(
          cfg, sigma,
          seed_derive(cfg.master_seed,
                      kCalibrationBase + trial_tag(ct, kStreamNoise)));
      MeasurementOperator op =
          cfg.measurement.redraw_per_trial
              ? make_operator(cfg.measurement.kind, cfg.measurement.m, n,
                              seed_derive(cfg.master_seed,
                                          kCalibrationBase +
                                              trial_tag(ct, kStreamOperator)))
              : shared_op;
      SensingMap map = sensing_map(std::move(op), n);
      MeasurementVector y = measure(map.op(), noise);
      for (int si = 0; si < n_solvers; ++si) {
        SolveResult sr = solve(map, y, cfg.plan, cfg.solvers[si]);
        pools[si].push_back(
            subband_energies(sr.r_hat, *cfg.plan, NormalizeMode::raw));
      }
    }
    for (int si = 0; si < n_solvers; ++si)
      result.thresholds[cfg.solvers[si].name] = calibrate_threshold(
          pools[si], *cfg.plan, cfg.detection.false_alarm_rate);
  }

  result.records.resize(static_cast<size_t>(cfg.trials) * n_solvers);
  std::vector<std::vector<double>> wall(n_solvers,
                                        std::vector<double>(cfg.trials, 0.0));

  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto run_trial = [&](int t) {
    SignalSpec spec = cfg.signal;
    spec.seed = seed_derive(
        cfg.master_seed,
        trial_tag(cfg.redraw_signal ? t : 0, kStreamSpectrum));
    SpectrumVector truth = generate_spectrum(cfg.plan, spec);
    TimeSignal clean = spectrum_to_time(truth);
    TimeSignal noisy = add_awgn(
        clean, spec.snr_db,
        seed_derive(cfg.master_seed,
                    trial_tag(cfg.redraw_noise ? t : 0, kStreamNoise)));
    MeasurementOperator op =
        cfg.measurement.redraw_per_trial
            ? make_operator(
                  cfg.measurement.kind, cfg.measurement.m, n,
                  seed_derive(cfg.master_seed, trial_tag(t, kStreamOperator)))
            : shared_op;
    SensingMap map = sensing_map(std::move(op), n);
    MeasurementVector y = measure(map.op(), noisy);

    if (t == 0) {
      result.truth0 = truth;
      result.y0 = y;
      result.op0 = map.op();
    }

    for (int si = 0; si < n_solvers; ++si) {
      const SolverConfig& solver_cfg = cfg.solvers[si];
      auto start = std::chrono::steady_clock::now();
      SolveResult sr = solve(map, y, cfg.plan, solver_cfg);
      wall[si][t] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                        start)
              .count();

      SubbandEnergies raw =
          subband_energies(sr.r_hat, *cfg.plan, NormalizeMode::raw);
      TrialRecord& record =
          result.records[static_cast<size_t>(t) * n_solvers + si];
      record.trial = t;
      record.solver = solver_cfg.name;
      record.converged = sr.converged;
      record.iterations = sr.iterations;
      record.residual_norm = sr.residual_norm;
      record.energies =
          cfg.normalize == NormalizeMode::raw
              ? raw.values
              : subband_energies(sr.r_hat, *cfg.plan, cfg.normalize).values;
      auto threshold = result.thresholds.find(solver_cfg.name);
      if (threshold != result.thresholds.end())
        record.occupied =
            detect_occupancy(raw, *cfg.plan, threshold->second).occupied;

      if (t == 0)
        result.recoveries0.emplace_back(solver_cfg.name, sr.r_hat.values);
    }
  };

  auto guarded_trial = [&](int t) {
    try {
      run_trial(t);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  int workers = std::min(cfg.parallelism, cfg.trials);
  if (workers <= 1) {
    for (int t = 0; t < cfg.trials && !failure; ++t) guarded_trial(t);
  } else {
    std::atomic<int> next{0};
    auto drain = [&] {
      for (;;) {
        if (failure) return;
        int t = next.fetch_add(1);
        if (t >= cfg.trials) return;
        guarded_trial(t);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int i = 0; i < workers; ++i) pool.emplace_back(drain);
    for (std::thread& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (int si = 0; si < n_solvers; ++si) {
    double total = 0.0;
    for (double w : wall[si]) total += w;
    result.mean_wall_time_s[cfg.solvers[si].name] = total / cfg.trials;
  }

  result.aggregate = aggregate_records(result.records, *cfg.plan, cfg);
  return result;
}

AggregateReport aggregate_records(const std::vector<TrialRecord>& records,
                                  const BandPlan& plan,
                                  const ExperimentConfig& input_cfg) {
  ExperimentConfig cfg = input_cfg;
  finalize_config(cfg);
  const int k = plan.section_count();

  AggregateReport report;
  report.baseline = cfg.baseline;
  report.normalize = cfg.normalize;
  report.include_nonconverged = cfg.include_nonconverged;

  for (const SolverConfig& solver_cfg : cfg.solvers) {
    const std::string& label = solver_cfg.name;
    report.solver_order.push_back(label);
    SolverSummary summary;
    summary.mean_energies.assign(k, kNan);
    summary.std_energies.assign(k, 0.0);
    summary.mean_iterations = kNan;
    summary.mean_residual_norm = kNan;
    summary.detection_rate = kNan;
    summary.false_alarm_rate = kNan;

    std::vector<const TrialRecord*> included;
    int converged_count = 0;
    for (const TrialRecord& record : records) {
      if (record.solver != label) continue;
      if (record.energies.size() != static_cast<size_t>(k))
        throw std::invalid_argument(
            "aggregate: record energies do not match the plan");
      ++summary.trials_total;
      if (record.converged) ++converged_count;
      if (record.converged || cfg.include_nonconverged)
        included.push_back(&record);
    }
    summary.trials_included = static_cast<int>(included.size());
    if (summary.trials_total > 0)
      summary.convergence_rate =
          double(converged_count) / summary.trials_total;

    if (!included.empty()) {
      double iter_sum = 0.0, residual_sum = 0.0;
      std::vector<double> sums(k, 0.0);
      for (const TrialRecord* record : included) {
        iter_sum += record->iterations;
        residual_sum += record->residual_norm;
        for (int i = 0; i < k; ++i) sums[i] += record->energies[i];
      }
      double count = double(included.size());
      summary.mean_iterations = iter_sum / count;
      summary.mean_residual_norm = residual_sum / count;
      for (int i = 0; i < k; ++i) summary.mean_energies[i] = sums[i] / count;
      if (included.size() > 1) {
        std::vector<double> sq(k, 0.0);
        for (const TrialRecord* record : included)
          for (int i = 0; i < k; ++i) {
            double d = record->energies[i] - summary.mean_energies[i];
            sq[i] += d * d;
          }
        for (int i = 0; i < k; ++i)
          summary.std_energies[i] = std::sqrt(sq[i] / (count - 1.0));
      }

      long active_hits = 0, active_total = 0;
      long inactive_hits = 0, inactive_total = 0;
      for (const TrialRecord* record : included) {
        if (record->occupied.empty()) continue;
        if (record->occupied.size() != static_cast<size_t>(k))
          throw std::invalid_argument(
              "aggregate: record decisions do not match the plan");
        for (int i = 0; i < k; ++i) {
          const std::optional<bool>& truth = plan.sections()[i].active_truth;
          if (!truth.has_value()) continue;
          if (*truth) {
            ++active_total;
            if (record->occupied[i]) ++active_hits;
          } else {
            ++inactive_total;
            if (record->occupied[i]) ++inactive_hits;
          }
        }
      }
      if (active_total > 0)
        summary.detection_rate = double(active_hits) / active_total;
      if (inactive_total > 0)
        summary.false_alarm_rate = double(inactive_hits) / inactive_total;
    }
    report.solvers.emplace(label, std::move(summary));
  }

  // EBR of each solver against the baseline, on mean energies
  SubbandEnergies baseline_energies;
  baseline_energies.values = report.solvers.at(report.baseline).mean_energies;
  baseline_energies.mode = cfg.normalize;
  for (const std::string& label : report.solver_order) {
    if (label == report.baseline) continue;
    SubbandEnergies mean;
    mean.values = report.solvers.at(label).mean_energies;
    mean.mode = cfg.normalize;
    report.solvers.at(label).ebr_vs_baseline_pct =
        ebr(mean, baseline_energies, plan);
  }
  return report;
}

// ---------------------------------------------------------------- outputs

void write_trials_csv(const std::string& path,
                      const std::vector<TrialRecord>& records,
                      const BandPlan& plan) {
  const int k = plan.section_count();
  bool with_decisions =
      !records.empty() && !records.front().occupied.empty();
  for (const TrialRecord& record : records) {
    if (record.energies.size() != static_cast<size_t>(k))
      throw std::invalid_argument("trials csv: record energies do not match the plan");
    if ((record.occupied.empty() && with_decisions) ||
        (!record.occupied.empty() &&
         (record.occupied.size() != static_cast<size_t>(k) || !with_decisions)))
      throw std::invalid_argument("trials csv: inconsistent detection columns");
  }

  std::vector<std::string> header = {"trial", "solver", "converged",
                                     "iterations", "residual_norm"};
  for (int i = 1; i <= k; ++i) header.push_back("e" + std::to_string(i));
  if (with_decisions)
    for (int i = 1; i <= k; ++i) header.push_back("occ" + std::to_string(i));

  std::vector<std::vector<std::string>> rows;
  rows.reserve(records.size());
  for (const TrialRecord& record : records) {
    std::vector<std::string> row = {
        std::to_string(record.trial), record.solver,
        record.converged ? "1" : "0", std::to_string(record.iterations),
        fmt_double(record.residual_norm)};
    for (double e : record.energies) row.push_back(fmt_double(e));
    if (with_decisions)
      for (bool d : record.occupied) row.push_back(d ? "1" : "0");
    rows.push_back(std::move(row));
  }
  write_csv_file(path, header, rows);
}

std::vector<TrialRecord> read_trials_csv(const std::string& path) {
  auto rows = read_csv_file(path);
  if (rows.empty()) throw std::runtime_error("trials csv: empty file: " + path);
  const std::vector<std::string>& header = rows.front();
  const std::vector<std::string> fixed = {"trial", "solver", "converged",
                                          "iterations", "residual_norm"};
  if (header.size() < fixed.size() ||
      !std::equal(fixed.begin(), fixed.end(), header.begin()))
    throw std::runtime_error("trials csv: unexpected header in " + path);
  size_t k = 0;
  size_t column = fixed.size();
  while (column < header.size() &&
         header[column] == "e" + std::to_string(k + 1)) {
    ++k;
    ++column;
  }
  size_t decisions = 0;
  while (column < header.size() &&
         header[column] == "occ" + std::to_string(decisions + 1)) {
    ++decisions;
    ++column;
  }
  if (column != header.size() || (decisions != 0 && decisions != k))
    throw std::runtime_error("trials csv: unexpected header in " + path);

  std::vector<TrialRecord> records;
  for (size_t ri = 1; ri < rows.size(); ++ri) {
    const auto& row = rows[ri];
    if (row.size() != header.size())
      throw std::runtime_error("trials csv: short row in " + path);
    TrialRecord record;
    record.trial = std::atoi(row[0].c_str());
    record.solver = row[1];
    record.converged = row[2] == "1";
    record.iterations = std::atoi(row[3].c_str());
    record.residual_norm = std::strtod(row[4].c_str(), nullptr);
    for (size_t i = 0; i < k; ++i)
      record.energies.push_back(std::strtod(row[5 + i].c_str(), nullptr));
    for (size_t i = 0; i < decisions; ++i)
      record.occupied.push_back(row[5 + k + i] == "1");
    records.push_back(std::move(record));
  }
  return records;
}

void write_aggregate_csv(const std::string& path,
                         const AggregateReport& report, const BandPlan& plan) {
  std::vector<std::string> header = {"solver",      "section",
                                     "label",       "active",
                                     "mean_energy", "std_energy",
                                     "ebr_vs_baseline_pct"};
  std::vector<std::vector<std::string>> rows;
  for (const std::string& label : report.solver_order) {
    const SolverSummary& summary = report.solvers.at(label);
    for (int i = 0; i < plan.section_count(); ++i) {
      const std::optional<bool>& truth = plan.sections()[i].active_truth;
      std::vector<std::string> row = {
          label,
          std::to_string(i + 1),
          plan.sections()[i].label,
          truth.has_value() ? (*truth ? "1" : "0") : "",
          fmt_double(summary.mean_energies[i]),
          fmt_double(summary.std_energies[i]),
          summary.ebr_vs_baseline_pct.empty()
              ? ""
              : fmt_double(summary.ebr_vs_baseline_pct[i])};
      rows.push_back(std::move(row));
    }
  }
  write_csv_file(path, header, rows);
}

void write_summary_csv(const std::string& path,
                       const AggregateReport& report) {
  std::vector<std::string> header = {
      "solver",          "trials",          "included",
      "convergence_rate", "mean_iterations", "mean_residual_norm",
      "detection_rate",  "false_alarm_rate"};
  std::vector<std::vector<std::string>> rows;
  for (const std::string& label : report.solver_order) {
    const SolverSummary& s = report.solvers.at(label);
    rows.push_back({label, std::to_string(s.trials_total),
                    std::to_string(s.trials_included),
                    fmt_double(s.convergence_rate),
                    fmt_double(s.mean_iterations),
                    fmt_double(s.mean_residual_norm),
                    fmt_double(s.detection_rate),
                    fmt_double(s.false_alarm_rate)});
  }
  write_csv_file(path, header, rows);
}

void write_timing_csv(const std::string& path,
                      const ExperimentResult& result) {
  double baseline_mean = kNan;
  auto it = result.mean_wall_time_s.find(result.aggregate.baseline);
  if (it != result.mean_wall_time_s.end()) baseline_mean = it->second;

  std::vector<std::string> header = {"solver", "mean_wall_time_s",
                                     "relative_to_baseline"};
  std::vector<std::vector<std::string>> rows;
  for (const std::string& label : result.aggregate.solver_order) {
    double mean = result.mean_wall_time_s.at(label);
    rows.push_back({label, fmt_double(mean), fmt_double(mean / baseline_mean)});
  }
  write_csv_file(path, header, rows);
}

void write_spectrum_plotdata(
    const std::string& path, const BandPlan& plan,
    const std::vector<std::pair<std::string, Eigen::VectorXcd>>& columns) {
  std::vector<std::string> header = {"bin", "freq_hz"};
  for (const auto& [name, values] : columns) {
    if (values.size() != plan.n_bins())
      throw std::invalid_argument("plot data: column '" + name +
                                  "' does not match the plan's bins");
    header.push_back(name);
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(plan.n_bins());
  for (int bin = 0; bin < plan.n_bins(); ++bin) {
    std::vector<std::string> row = {std::to_string(bin),
                                    fmt_double(plan.bin_freq_hz(bin))};
    for (const auto& [name, values] : columns)
      row.push_back(fmt_double(std::abs(values[bin])));
    rows.push_back(std::move(row));
  }
  write_csv_file(path, header, rows);
}

// -------------------------------------------------- solve dump round trip

namespace {

std::string quoted(const std::string& text) {
  if (text.find('"') != std::string::npos ||
      text.find('\n') != std::string::npos)
    throw std::invalid_argument("cannot serialize label: " + text);
  return "\"" + text + "\"";
}

void write_solver_block(std::ostream& out, const SolverConfig& s) {
  out << "solver {\n";
  out << "  program = " << to_string(s.program) << "\n";
  out << "  name = " << quoted(solver_label(s)) << "\n";
  out << "  epsilon = " << fmt_double(s.epsilon) << "\n";
  out << "  epsilon_relative = " << (s.epsilon_relative ? "true" : "false")
      << "\n";
  out << "  eta = " << fmt_double(s.eta) << "\n";
  out << "  eta_relative = " << (s.eta_relative ? "true" : "false") << "\n";
  out << "  d0 = " << s.d0 << "\n";
  out << "  max_iters = " << s.max_iters << "\n";
  out << "  abs_tol = " << fmt_double(s.abs_tol) << "\n";
  out << "  rel_tol = " << fmt_double(s.rel_tol) << "\n";
  out << "  rho = " << fmt_double(s.rho) << "\n";
  out << "  adaptive_rho = " << (s.adaptive_rho ? "true" : "false") << "\n";
  out << "  max_group_bins = " << s.max_group_bins << "\n";
  out << "}\n";
}

SolverConfig parse_solver_block(const ConfigNode& node) {
  SolverConfig s;
  s.program = program_from_string(node.get_string("program"));
  s.name = node.get_string("name", "");
  s.epsilon = node.get_double("epsilon", s.epsilon);
  s.epsilon_relative = node.get_bool("epsilon_relative", s.epsilon_relative);
  s.eta = node.get_double("eta", s.eta);
  s.eta_relative = node.get_bool("eta_relative", s.eta_relative);
  s.d0 = static_cast<int>(node.get_int("d0", s.d0));
  s.max_iters = static_cast<int>(node.get_int("max_iters", s.max_iters));
  s.abs_tol = node.get_double("abs_tol", s.abs_tol);
  s.rel_tol = node.get_double("rel_tol", s.rel_tol);
  s.rho = node.get_double("rho", s.rho);
  s.adaptive_rho = node.get_bool("adaptive_rho", s.adaptive_rho);
  s.max_group_bins =
      static_cast<int>(node.get_int("max_group_bins", s.max_group_bins));
  return s;
}

void write_bandplan_block(std::ostream& out, const BandPlan& plan) {
  out << "bandplan {\n";
  out << "  f_min_hz = " << fmt_double(plan.f_min_hz()) << "\n";
  out << "  f_max_hz = " << fmt_double(plan.f_max_hz()) << "\n";
  out << "  n_bins = " << plan.n_bins() << "\n";
  for (const ActiveBand& band : plan.active_bands()) {
    out << "  band {\n";
    out << "    f_lo_hz = " << fmt_double(band.f_lo_hz) << "\n";
    out << "    f_hi_hz = " << fmt_double(band.f_hi_hz) << "\n";
    out << "    label = " << quoted(band.label) << "\n";
    out << "  }\n";
  }
  out << "}\n";
}

}  // namespace

void write_solve_dump(const std::string& config_path,
                      const std::string& y_csv_path,
                      const ExperimentConfig& cfg,
                      const MeasurementOperator& op,
                      const MeasurementVector& y) {
  {
    std::vector<std::string> header = {"index", "re", "im"};
    std::vector<std::vector<std::string>> rows;
    for (int i = 0; i < y.values.size(); ++i)
      rows.push_back({std::to_string(i), fmt_double(y.values[i].real()),
                      fmt_double(y.values[i].imag())});
    write_csv_file(y_csv_path, header, rows);
  }

  std::ofstream out(config_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write config: " + config_path);
  out << "# single-recovery input; reproduces one harness measurement\n";
  write_bandplan_block(out, *cfg.plan);
  out << "operator {\n";
  out << "  kind = " << to_string(op.kind()) << "\n";
  out << "  m = " << op.m() << "\n";
  out << "  n = " << op.n() << "\n";
  out << "  seed = " << op.seed() << "\n";
  out << "}\n";
  out << "y_file = "
      << quoted(std::filesystem::path(y_csv_path).filename().string())
      << "\n";
  for (const SolverConfig& s : cfg.solvers) write_solver_block(out, s);
  if (!out) throw std::runtime_error("write failed: " + config_path);
}

SolveInput load_solve_input(const std::string& path) {
  ConfigNode root = ConfigNode::parse_file(path);
  SolveInput input;
  try {
    if (const ConfigNode* plan_node = root.optional_block("bandplan"))
      input.plan = std::make_shared<BandPlan>(parse_bandplan(*plan_node));

    const ConfigNode& op_node = root.block("operator");
    OperatorKind kind =
        operator_kind_from_string(op_node.get_string("kind"));
    int m = static_cast<int>(op_node.get_int("m"));
    int n = static_cast<int>(op_node.get_int("n"));
    std::uint64_t seed = op_node.get_uint64("seed");
    input.op = make_operator(kind, m, n, seed);

    std::string y_file = root.get_string("y_file");
    std::filesystem::path y_path =
        std::filesystem::path(path).parent_path() / y_file;
    auto rows = read_csv_file(y_path.string());
    if (rows.empty() || rows.front() != std::vector<std::string>{"index", "re", "im"})
      throw ConfigError("measurement csv: unexpected header in " +
                        y_path.string());
    input.y.values.resize(static_cast<Eigen::Index>(rows.size()) - 1);
    for (size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].size() != 3)
        throw ConfigError("measurement csv: short row in " + y_path.string());
      input.y.values[static_cast<Eigen::Index>(i) - 1] =
          std::complex<double>(std::strtod(rows[i][1].c_str(), nullptr),
                               std::strtod(rows[i][2].c_str(), nullptr));
    }
    if (input.y.values.size() != m)
      throw ConfigError("measurement csv: expected " + std::to_string(m) +
                        " rows, got " + std::to_string(input.y.values.size()));

    for (const ConfigNode& s : root.blocks("solver"))
      input.solvers.push_back(parse_solver_block(s));
    if (input.solvers.empty())
      throw ConfigError(path + ": at least one solver block is required");
    for (const SolverConfig& s : input.solvers)
      if (s.program == Program::mndo && !input.plan)
        throw ConfigError(path + ": mndo needs a bandplan block");
    if (input.plan && input.plan->n_bins() != n)
      throw ConfigError(path + ": bandplan bins do not match operator n");
    root.require_all_consumed();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(e.what());
  }
  return input;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  ConfigNode root = ConfigNode::parse_file(path);
  ExperimentConfig cfg;
  try {
    cfg.plan = std::make_shared<BandPlan>(parse_bandplan(root.block("bandplan")));

    const ConfigNode& signal = root.block("signal");
    cfg.signal.snr_db = signal.get_double("snr_db", kNoiselessSnrDb);
    std::string mode = signal.get_string("mode", "complex");
    if (mode == "real")
      cfg.signal.real_valued = true;
    else if (mode != "complex")
      throw ConfigError(path + ": signal mode must be complex or real");
    for (const ConfigNode& psd : signal.blocks("psd")) {
      std::string band = psd.get_string("band");
      PsdRange range{psd.get_double("low"), psd.get_double("high")};
      if (!cfg.signal.psd_ranges.emplace(band, range).second)
        throw ConfigError(path + ": duplicate psd block for band '" + band + "'");
    }

    const ConfigNode& measurement = root.block("measurement");
    cfg.measurement.kind =
        operator_kind_from_string(measurement.get_string("kind", "selection"));
    cfg.measurement.m = static_cast<int>(measurement.get_int("m"));
    cfg.measurement.redraw_per_trial = measurement.get_bool("redraw", true);

    for (const ConfigNode& s : root.blocks("solver"))
      cfg.solvers.push_back(parse_solver_block(s));

    if (const ConfigNode* run = root.optional_block("run")) {
      cfg.trials = static_cast<int>(run->get_int("trials", cfg.trials));
      cfg.master_seed = run->get_uint64("seed", cfg.master_seed);
      cfg.normalize =
          normalize_mode_from_string(run->get_string("normalize", "total"));
      cfg.baseline = run->get_string("baseline", "");
      cfg.include_nonconverged =
          run->get_bool("include_nonconverged", cfg.include_nonconverged);
      cfg.redraw_signal = run->get_bool("redraw_signal", cfg.redraw_signal);
      cfg.redraw_noise = run->get_bool("redraw_noise", cfg.redraw_noise);
      cfg.parallelism =
          static_cast<int>(run->get_int("parallelism", cfg.parallelism));
      if (const ConfigNode* detection = run->optional_block("detection")) {
        cfg.detection.calibration_trials = static_cast<int>(
            detection->get_int("calibration_trials", 0));
        cfg.detection.false_alarm_rate =
            detection->get_double("false_alarm_rate", 0.01);
      }
    }
    root.require_all_consumed();
    finalize_config(cfg);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return cfg;
}

}  // namespace specsense
