// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "specsense/bandplan.hpp"
#include "specsense/detect.hpp"
#include "specsense/sampling.hpp"
#include "specsense/sigmodel.hpp"
#include "specsense/solvers.hpp"

namespace specsense {

struct MeasurementSpec {
  OperatorKind kind = OperatorKind::selection;
  int m = 0;
  /// Fresh operator per trial (independent sensing events) or one shared
  /// operator for variance isolation.
  bool redraw_per_trial = true;
};

/// Energy-detection setup. calibration_trials > 0 enables detection: that
/// many signal-absent recoveries per solver set the threshold at the
/// (1 - false_alarm_rate) quantile of noise-only section statistics.
struct DetectionSpec {
  int calibration_trials = 0;
  double false_alarm_rate = 0.01;
};

struct ExperimentConfig {
  std::shared_ptr<const BandPlan> plan;
  SignalSpec signal;  // its seed field is ignored; trials derive their own
  MeasurementSpec measurement;
  std::vector<SolverConfig> solvers;
  int trials = 200;
  std::uint64_t master_seed = 1;
  NormalizeMode normalize = NormalizeMode::total;
  std::string baseline;  // EBR reference solver label; empty = first solver
  bool include_nonconverged = true;  // keep flagged non-converged trials in aggregates
  bool redraw_signal = true;
  bool redraw_noise = true;
  int parallelism = 1;
  DetectionSpec detection;
};

/// One (trial, solver) outcome. Energies use the experiment's normalize
/// mode; occupied is empty when detection is disabled. Wall time is kept
/// out of the record so record streams and their CSV form are
/// reproducible bit for bit.
struct TrialRecord {
  int trial = 0;
  std::string solver;
  bool converged = false;
  int iterations = 0;
  double residual_norm = 0.0;
  std::vector<double> energies;
  std::vector<bool> occupied;
};

/// Per-solver aggregate statistics over the included trials. Means are NaN
/// when no trial qualified; detection fields are NaN when detection was
/// off. ebr_vs_baseline_pct is empty for the baseline itself and is
/// computed on mean energies.
struct SolverSummary {
  int trials_total = 0;
  int trials_included = 0;
  double convergence_rate = 0.0;
  double mean_iterations = 0.0;
  double mean_residual_norm = 0.0;
  std::vector<double> mean_energies;
  std::vector<double> std_energies;  // sample standard deviation
  std::vector<double> ebr_vs_baseline_pct;
  double detection_rate = 0.0;
  double false_alarm_rate = 0.0;
};

struct AggregateReport {
  std::vector<std::string> solver_order;
  std::map<std::string, SolverSummary> solvers;
  std::string baseline;
  NormalizeMode normalize = NormalizeMode::total;
  bool include_nonconverged = true;
};

struct ExperimentResult {
  AggregateReport aggregate;
  std::vector<TrialRecord> records;  // trial-major, config solver order within
  /// Trial-0 artifacts for plot data and single-solve reproduction.
  SpectrumVector truth0;
  std::vector<std::pair<std::string, Eigen::VectorXcd>> recoveries0;
  MeasurementVector y0;
  MeasurementOperator op0;
  /// Machine-dependent; reported separately from the deterministic outputs.
  std::map<std::string, double> mean_wall_time_s;
  /// Calibrated detection thresholds per solver (empty when detection off).
  std::map<std::string, double> thresholds;
};

/// Runs the Monte Carlo experiment: per trial, draw spectrum/noise/operator
/// under the redraw flags (seeds derive from (master_seed, trial index), so
/// extending the trial count preserves earlier trials), measure once, and
/// run every solver on that same measurement. Trials may run concurrently
/// up to cfg.parallelism; outputs are ordered by trial index regardless.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// Recomputes the aggregate from a record stream (same arithmetic
/// run_experiment uses, so re-aggregating parsed CSV reproduces it).
AggregateReport aggregate_records(const std::vector<TrialRecord>& records,
                                  const BandPlan& plan,
                                  const ExperimentConfig& cfg);

void write_trials_csv(const std::string& path,
                      const std::vector<TrialRecord>& records,
                      const BandPlan& plan);
std::vector<TrialRecord> read_trials_csv(const std::string& path);

void write_aggregate_csv(const std::string& path,
                         const AggregateReport& report, const BandPlan& plan);
void write_summary_csv(const std::string& path, const AggregateReport& report);
/// Wall-clock means; the one output that is not run-to-run reproducible.
void write_timing_csv(const std::string& path, const ExperimentResult& result);

/// Magnitude columns for plotting: bin, freq_hz, then one |.| column per
/// named vector (truth first by convention).
void write_spectrum_plotdata(
    const std::string& path, const BandPlan& plan,
    const std::vector<std::pair<std::string, Eigen::VectorXcd>>& columns);

/// Inputs for a single recovery outside the harness.
struct SolveInput {
  std::shared_ptr<const BandPlan> plan;
  MeasurementOperator op;
  MeasurementVector y;
  std::vector<SolverConfig> solvers;
};

/// Writes a self-contained single-solve config (plan, operator spec,
/// solver list, measurement CSV) that load_solve_input reads back; used to
/// re-run one trial's recovery outside the harness.
void write_solve_dump(const std::string& config_path,
                      const std::string& y_csv_path,
                      const ExperimentConfig& cfg,
                      const MeasurementOperator& op,
                      const MeasurementVector& y);
SolveInput load_solve_input(const std::string& path);

ExperimentConfig load_experiment_config(const std::string& path);

}  // namespace specsense
