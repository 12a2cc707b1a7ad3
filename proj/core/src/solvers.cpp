// SPDX-License-Identifier: Apache-2.0
#include "specsense/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace specsense {

std::string to_string(Program program) {
  switch (program) {
    case Program::bp: return "bp";
    case Program::lasso: return "lasso";
    case Program::block_l2l1: return "block_l2l1";
    case Program::mndo: return "mndo";
  }
  return "?";
}

Program program_from_string(const std::string& name) {
  if (name == "bp") return Program::bp;
  if (name == "lasso") return Program::lasso;
  if (name == "block_l2l1") return Program::block_l2l1;
  if (name == "mndo") return Program::mndo;
  throw std::invalid_argument("unknown program '" + name +
                              "' (expected bp, lasso, block_l2l1, or mndo)");
}

std::string solver_label(const SolverConfig& cfg) {
  return cfg.name.empty() ? to_string(cfg.program) : cfg.name;
}

Eigen::VectorXcd prox_group_l2(const Eigen::VectorXcd& v, double threshold) {
  if (threshold < 0.0)
    throw std::invalid_argument("prox_group_l2: threshold must be >= 0");
  double norm = v.norm();
  if (norm <= threshold) return Eigen::VectorXcd::Zero(v.size());
  return (1.0 - threshold / norm) * v;
}

Eigen::VectorXcd project_l2_ball(const Eigen::VectorXcd& v,
                                 const Eigen::VectorXcd& center,
                                 double radius) {
  if (radius < 0.0)
    throw std::invalid_argument("project_l2_ball: radius must be >= 0");
  if (v.size() != center.size())
    throw std::invalid_argument("project_l2_ball: size mismatch");
  double distance = (v - center).norm();
  if (distance <= radius) return v;
  return center + (radius / distance) * (v - center);
}

std::vector<SectionRange> equal_blocks(int n, int d0) {
  if (d0 < 1 || n % d0 != 0)
    throw std::invalid_argument("equal_blocks: d0 = " + std::to_string(d0) +
                                " does not divide n = " + std::to_string(n));
  std::vector<SectionRange> groups;
  groups.reserve(n / d0);
  for (int start = 0; start < n; start += d0) groups.push_back({start, d0});
  return groups;
}

std::vector<SectionRange> singleton_groups(int n) { return equal_blocks(n, 1); }

namespace {

void validate_groups(const std::vector<SectionRange>& groups, int n) {
  int expected = 0;
  for (const SectionRange& g : groups) {
    if (g.start_bin != expected || g.length < 1)
      throw std::invalid_argument(
          "solve_grouped: groups must partition 0..n-1 in order");
    expected += g.length;
  }
  if (expected != n)
    throw std::invalid_argument("solve_grouped: groups cover " +
                                std::to_string(expected) + " of " +
                                std::to_string(n) + " coefficients");
}

void validate_config(const SolverConfig& cfg) {
  if (cfg.max_iters < 1)
    throw std::invalid_argument("solver config: max_iters must be >= 1");
  if (!(cfg.abs_tol > 0.0) || !(cfg.rel_tol > 0.0))
    throw std::invalid_argument("solver config: tolerances must be > 0");
  if (!(cfg.rho > 0.0))
    throw std::invalid_argument("solver config: rho must be > 0");
}

// Cached solve with (I + A A^H)^{-1}. A A^H = Phi Phi^T is real symmetric,
// so one real factorization serves both complex components; the
// row-selection kind makes it exactly 2I.
class GramSolver {
 public:
  explicit GramSolver(const SensingMap& A) : identity_(A.gram_is_identity()) {
    if (!identity_) {
      Eigen::MatrixXd ig = A.gram();
      ig.diagonal().array() += 1.0;
      llt_.compute(ig);
      if (llt_.info() != Eigen::Success)
        throw std::runtime_error("solver: failed to factor I + A A^H");
    }
  }

  Eigen::VectorXcd solve(const Eigen::VectorXcd& rhs) const {
    if (identity_) return 0.5 * rhs;
    Eigen::VectorXcd out(rhs.size());
    out.real() = llt_.solve(rhs.real());
    out.imag() = llt_.solve(rhs.imag());
    return out;
  }

 private:
  bool identity_;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

double sum_group_norms(const Eigen::VectorXcd& r,
                       const std::vector<SectionRange>& groups) {
  double total = 0.0;
  for (const SectionRange& g : groups)
    total += r.segment(g.start_bin, g.length).norm();
  return total;
}

}  // namespace

SolveResult solve_grouped(const SensingMap& A, const MeasurementVector& y,
                          const std::vector<SectionRange>& groups,
                          double radius, const SolverConfig& cfg) {
  const int n = A.n();
  const int m = A.m();
  if (y.values.size() != m)
    throw std::invalid_argument("solve_grouped: y length " +
                                std::to_string(y.values.size()) +
                                " != operator m " + std::to_string(m));
  if (radius < 0.0)
    throw std::invalid_argument("solve_grouped: radius must be >= 0");
  validate_groups(groups, n);
  validate_config(cfg);

  const double norm_y = y.values.norm();
  double feasibility_limit;
  if (radius == 0.0) {
    // equality intent: optimize over a tiny ball, accept only near-exact fits
    radius = std::max(1e-9, 1e-8 * norm_y);
    feasibility_limit = std::max(1e-6 * norm_y, 1e-12);
  } else {
    feasibility_limit = radius * (1.0 + 1e-6) + 1e-12 * std::max(1.0, norm_y);
  }

  GramSolver gram(A);

  // splitting: min sum ||z_g|| + indicator{||w - y|| <= radius}
  //            s.t. z = r, w = A r
  Eigen::VectorXcd r = A.adjoint(y.values);
  Eigen::VectorXcd z = r;
  Eigen::VectorXcd w = A.forward(r);
  Eigen::VectorXcd u = Eigen::VectorXcd::Zero(n);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(m);
  Eigen::VectorXcd ar(m), b(n), z_old(n), w_old(m), dual_dir(n), t(n);

  double rho = cfg.rho;
  const double sqrt_nm = std::sqrt(static_cast<double>(n + m));
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  // Rebalancing every iteration can lock the iterates into a rho-flip limit
  // cycle; adapt sparsely and stop after a budget so the tail runs at fixed
  // rho, where the usual convergence guarantee applies.
  constexpr int kAdaptEvery = 10;
  constexpr int kAdaptBudget = 100;
  int adaptations = 0;

  SolveResult result;
  bool converged = false;
  int iter = 0;
  double s_pri = 0.0, s_dual = 0.0;
  while (iter < cfg.max_iters) {
    ++iter;

    // r-update: (I + A^H A) r = (z - u) + A^H (w - v), via the
    // m x m system: r = b - A^H (I + A A^H)^{-1} A b
    b = (z - u) + A.adjoint(w - v);
    A.forward(b, ar);
    r = b - A.adjoint(gram.solve(ar));
    A.forward(r, ar);

    // z-update: per-group shrinkage with threshold 1/rho
    z_old.swap(z);
    t = r + u;
    double threshold = 1.0 / rho;
    for (const SectionRange& g : groups) {
      auto seg = t.segment(g.start_bin, g.length);
      double norm = seg.norm();
      if (norm <= threshold)
        z.segment(g.start_bin, g.length).setZero();
      else
        z.segment(g.start_bin, g.length) = (1.0 - threshold / norm) * seg;
    }

    // w-update: projection onto the residual ball
    w_old.swap(w);
    w = ar + v;
    double distance = (w - y.values).norm();
    if (distance > radius) w = y.values + (radius / distance) * (w - y.values);

    u += r - z;
    v += ar - w;

    s_pri = std::sqrt((r - z).squaredNorm() + (ar - w).squaredNorm());
    dual_dir = (z - z_old) + A.adjoint(w - w_old);
    s_dual = rho * dual_dir.norm();

    double scale_pri =
        std::max(std::sqrt(r.squaredNorm() + ar.squaredNorm()),
                 std::sqrt(z.squaredNorm() + w.squaredNorm()));
    double eps_pri = sqrt_nm * cfg.abs_tol + cfg.rel_tol * scale_pri;
    double eps_dual = sqrt_n * cfg.abs_tol +
                      cfg.rel_tol * rho * (u + A.adjoint(v)).norm();

    if (s_pri <= eps_pri && s_dual <= eps_dual) {
      // report the z iterate: group zeros are exact there
      double residual = (y.values - A.forward(z)).norm();
      if (residual <= feasibility_limit) {
        converged = true;
        break;
      }
    }

    // residual balancing; the r-update system is rho-free, so the cached
    // factorization stays valid
    if (cfg.adaptive_rho && iter % kAdaptEvery == 0 &&
        adaptations < kAdaptBudget) {
      if (s_pri > 10.0 * s_dual) {
        rho *= 2.0;
        u *= 0.5;
        v *= 0.5;
        ++adaptations;
      } else if (s_dual > 10.0 * s_pri) {
        rho *= 0.5;
        u *= 2.0;
        v *= 2.0;
        ++adaptations;
      }
    }
  }

  result.r_hat.values = z;
  result.objective = sum_group_norms(z, groups);
  result.residual_norm = (y.values - A.forward(z)).norm();
  result.iterations = iter;
  result.converged = converged;
  result.primal_residual = s_pri;
  result.dual_residual = s_dual;
  return result;
}

namespace {

double resolve_bound(double value, bool relative, double norm_y,
                     const char* what) {
  if (value < 0.0)
    throw std::invalid_argument(std::string(what) + " must be >= 0");
  return relative ? value * norm_y : value;
}

// Splits every range wider than max_bins into balanced contiguous chunks
// of at most max_bins (widths differing by at most one bin). max_bins = 0
// keeps the ranges as they are.
std::vector<SectionRange> cap_group_widths(
    const std::vector<SectionRange>& ranges, int max_bins) {
  if (max_bins == 0) return ranges;
  if (max_bins < 0)
    throw std::invalid_argument("max_group_bins must be >= 0");
  std::vector<SectionRange> out;
  out.reserve(ranges.size());
  for (const SectionRange& g : ranges) {
    if (g.length <= max_bins) {
      out.push_back(g);
      continue;
    }
    int pieces = (g.length + max_bins - 1) / max_bins;
    int base = g.length / pieces;
    int extra = g.length % pieces;
    int at = g.start_bin;
    for (int p = 0; p < pieces; ++p) {
      int width = base + (p < extra ? 1 : 0);
      out.push_back({at, width});
      at += width;
    }
  }
  return out;
}

}  // namespace

SolveResult solve_bp(const SensingMap& A, const MeasurementVector& y,
                     const SolverConfig& cfg) {
  return solve_grouped(A, y, singleton_groups(A.n()), 0.0, cfg);
}

SolveResult solve_lasso(const SensingMap& A, const MeasurementVector& y,
                        const SolverConfig& cfg) {
  double epsilon = resolve_bound(cfg.epsilon, cfg.epsilon_relative,
                                 y.values.norm(), "lasso epsilon");
  return solve_grouped(A, y, singleton_groups(A.n()), epsilon, cfg);
}

SolveResult solve_block_l2l1(const SensingMap& A, const MeasurementVector& y,
                             const SolverConfig& cfg) {
  return solve_grouped(A, y, equal_blocks(A.n(), cfg.d0), 0.0, cfg);
}

SolveResult solve_mndo(const SensingMap& A, const MeasurementVector& y,
                       std::shared_ptr<const BandPlan> plan,
                       const SolverConfig& cfg) {
  if (!plan) throw std::invalid_argument("solve_mndo: null plan");
  if (plan->n_bins() != A.n())
    throw std::invalid_argument("solve_mndo: plan has " +
                                std::to_string(plan->n_bins()) +
                                " bins, operator n is " +
                                std::to_string(A.n()));
  double eta = resolve_bound(cfg.eta, cfg.eta_relative, y.values.norm(),
                             "mndo eta");
  SolveResult result = solve_grouped(
      A, y, cap_group_widths(section_index_ranges(*plan), cfg.max_group_bins),
      eta, cfg);
  result.r_hat.plan = std::move(plan);
  return result;
}

SolveResult solve(const SensingMap& A, const MeasurementVector& y,
                  std::shared_ptr<const BandPlan> plan,
                  const SolverConfig& cfg) {
  switch (cfg.program) {
    case Program::bp: return solve_bp(A, y, cfg);
    case Program::lasso: return solve_lasso(A, y, cfg);
    case Program::block_l2l1: return solve_block_l2l1(A, y, cfg);
    case Program::mndo: return solve_mndo(A, y, std::move(plan), cfg);
  }
  throw std::logic_error("solve: unhandled program");
}

}  // namespace specsense
