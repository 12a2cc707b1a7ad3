// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "specsense/bandplan.hpp"
#include "specsense/sampling.hpp"
#include "specsense/sigmodel.hpp"

namespace specsense {

enum class Program { bp, lasso, block_l2l1, mndo };

std::string to_string(Program program);
Program program_from_string(const std::string& name);

/// Parameters shared by the four recovery programs. epsilon bounds the
/// residual for lasso, eta for mndo; each may be absolute or relative to
/// ||y||_2 (relative is the default reporting convention). d0 is the
/// equal block length for block_l2l1 and must divide n.
struct SolverConfig {
  Program program = Program::mndo;
  std::string name;  // label in experiment outputs; empty means program name

  double epsilon = 0.0;
  bool epsilon_relative = true;
  double eta = 0.0;
  bool eta_relative = true;
  int d0 = 1;

  int max_iters = 5000;
  double abs_tol = 1e-6;
  double rel_tol = 1e-5;
  double rho = 1.0;
  bool adaptive_rho = true;

  // Upper bound, in bins, on any single mndo group. Plan sections wider
  // than this are split into balanced contiguous chunks before the solver
  // forms its groups; 0 leaves sections whole. A group's dual norm grows
  // ~ sqrt(width), so an uncapped wide section can absorb diffuse residual
  // energy more cheaply than narrow ones and survive the group threshold.
  // Only geometry is consulted, never occupancy. Reported section energies
  // are unaffected (the harness aggregates over plan sections).
  int max_group_bins = 0;
};

/// The label a config reports under (explicit name or the program name).
std::string solver_label(const SolverConfig& cfg);

struct SolveResult {
  SpectrumVector r_hat;
  double objective = 0.0;      // sum of group l2 norms of r_hat
  double residual_norm = 0.0;  // ||y - A r_hat||_2
  int iterations = 0;
  bool converged = false;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
};

/// Proximal operator of threshold * ||.||_2: scales v by
/// (1 - threshold/||v||_2)+, so the whole vector hits exact zero inside
/// the threshold.
Eigen::VectorXcd prox_group_l2(const Eigen::VectorXcd& v, double threshold);

/// Euclidean projection onto the ball ||x - center||_2 <= radius.
Eigen::VectorXcd project_l2_ball(const Eigen::VectorXcd& v,
                                 const Eigen::VectorXcd& center,
                                 double radius);

/// n/d0 contiguous blocks of length d0 (d0 must divide n).
std::vector<SectionRange> equal_blocks(int n, int d0);
/// n groups of one bin each (the l1 objective).
std::vector<SectionRange> singleton_groups(int n);

/// Shared ADMM engine: minimize the sum of group l2 norms of r subject to
/// ||A r - y||_2 <= radius, over groups that partition 0..n-1. radius = 0
/// means equality intent and is relaxed to an internal tolerance ball of
/// max(1e-9, 1e-8 ||y||), with convergence additionally gated on
/// ||y - A r_hat|| <= 1e-6 ||y||. Positive radii gate on
/// radius (1 + 1e-6) plus a tiny absolute slack. Non-convergence within
/// max_iters is flagged, not thrown.
SolveResult solve_grouped(const SensingMap& A, const MeasurementVector& y,
                          const std::vector<SectionRange>& groups,
                          double radius, const SolverConfig& cfg);

/// min ||r||_1 s.t. A r = y (tolerance ball as above).
SolveResult solve_bp(const SensingMap& A, const MeasurementVector& y,
                     const SolverConfig& cfg);
/// min ||r||_1 s.t. ||A r - y||_2 <= epsilon.
SolveResult solve_lasso(const SensingMap& A, const MeasurementVector& y,
                        const SolverConfig& cfg);
/// min sum of ||r_block||_2 over equal blocks of d0 s.t. A r = y.
SolveResult solve_block_l2l1(const SensingMap& A, const MeasurementVector& y,
                             const SolverConfig& cfg);
/// min sum of ||r_section||_2 over the plan's variable-length sections
/// s.t. ||A r - y||_2 <= eta. The result carries the plan. With
/// cfg.max_group_bins > 0 sections wider than the bound contribute several
/// balanced sub-groups to the objective instead of one wide group.
SolveResult solve_mndo(const SensingMap& A, const MeasurementVector& y,
                       std::shared_ptr<const BandPlan> plan,
                       const SolverConfig& cfg);

/// Dispatch on cfg.program (plan required only for mndo).
SolveResult solve(const SensingMap& A, const MeasurementVector& y,
                  std::shared_ptr<const BandPlan> plan,
                  const SolverConfig& cfg);

}  // namespace specsense
