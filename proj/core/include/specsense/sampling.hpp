// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "specsense/fft.hpp"
#include "specsense/sigmodel.hpp"

namespace specsense {

enum class OperatorKind { selection, gaussian, bernoulli };

std::string to_string(OperatorKind kind);
OperatorKind operator_kind_from_string(const std::string& name);

/// The m x n measurement matrix Phi applied to Nyquist-grid time samples.
/// selection picks m distinct sample indices (stored as indices, never a
/// dense matrix); gaussian has i.i.d. N(0, 1/m) entries; bernoulli has
/// +-1/sqrt(n) entries. Immutable after construction.
class MeasurementOperator {
 public:
  /// Empty (0 x 0) until assigned from make_operator.
  MeasurementOperator() = default;

  OperatorKind kind() const { return kind_; }
  int m() const { return m_; }
  int n() const { return n_; }
  std::uint64_t seed() const { return seed_; }

  /// Selected sample indices, in draw order (selection kind only).
  const std::vector<int>& rows() const;
  /// Dense matrix (gaussian/bernoulli kinds only).
  const Eigen::MatrixXd& matrix() const;

  /// y = Phi x.
  Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
  /// x = Phi^T y (Phi is real, so transpose is the adjoint).
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& y) const;

 private:
  friend MeasurementOperator make_operator(OperatorKind, int, int,
                                           std::uint64_t);

  OperatorKind kind_ = OperatorKind::selection;
  int m_ = 0;
  int n_ = 0;
  std::uint64_t seed_ = 0;
  std::vector<int> rows_;
  Eigen::MatrixXd matrix_;
};

/// Length-m compressed measurement y = Phi x (complex in complex-baseband
/// mode, imaginary parts zero for real signals).
struct MeasurementVector {
  Eigen::VectorXcd values;
};

/// Draws the operator deterministically from the seed. selection picks m
/// distinct indices uniformly at random.
MeasurementOperator make_operator(OperatorKind kind, int m, int n,
                                  std::uint64_t seed);

/// y = Phi x on a time signal; rejects length mismatches.
MeasurementVector measure(const MeasurementOperator& op, const TimeSignal& x);

/// The sensing map A = Phi F_n^{-1} from the frequency response to the
/// compressed measurement: forward(r) applies the unitary inverse DFT then
/// the measurement operator; adjoint is the exact conjugate transpose.
/// Shared read-only across concurrent solves.
class SensingMap {
 public:
  SensingMap(MeasurementOperator op, int n_bins);

  int m() const { return op_.m(); }
  int n() const { return op_.n(); }
  const MeasurementOperator& op() const { return op_; }

  void forward(const Eigen::VectorXcd& r, Eigen::VectorXcd& y) const;
  void adjoint(const Eigen::VectorXcd& y, Eigen::VectorXcd& r) const;

  Eigen::VectorXcd forward(const Eigen::VectorXcd& r) const {
    Eigen::VectorXcd y(m());
    forward(r, y);
    return y;
  }
  Eigen::VectorXcd adjoint(const Eigen::VectorXcd& y) const {
    Eigen::VectorXcd r(n());
    adjoint(y, r);
    return r;
  }

  /// True when A A^H = I exactly (selection of unitary-DFT rows).
  bool gram_is_identity() const {
    return op_.kind() == OperatorKind::selection;
  }
  /// A A^H = Phi Phi^T (the DFT factors cancel), real symmetric m x m.
  Eigen::MatrixXd gram() const;

 private:
  MeasurementOperator op_;
  UnitaryDft dft_;
};

SensingMap sensing_map(MeasurementOperator op, int n_bins);

/// Monte Carlo lower bound on the restricted isometry constant delta_s:
/// max over random s-sparse unit vectors v of |  ||Phi v||^2 - 1 |.
/// A lower bound only; the exact constant is combinatorial. The estimate
/// is reported raw (selection operators legitimately reach 1 at s > 1).
double estimate_rip_constant(const MeasurementOperator& op, int s, int trials,
                             std::uint64_t seed);

}  // namespace specsense
