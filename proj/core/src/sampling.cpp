// SPDX-License-Identifier: Apache-2.0
#include "specsense/sampling.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "specsense/rng.hpp"

namespace specsense {

std::string to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::selection: return "selection";
    case OperatorKind::gaussian: return "gaussian";
    case OperatorKind::bernoulli: return "bernoulli";
  }
  return "?";
}

OperatorKind operator_kind_from_string(const std::string& name) {
  if (name == "selection") return OperatorKind::selection;
  if (name == "gaussian") return OperatorKind::gaussian;
  if (name == "bernoulli") return OperatorKind::bernoulli;
  throw std::invalid_argument("unknown measurement kind '" + name +
                              "' (expected selection, gaussian, or bernoulli)");
}

const std::vector<int>& MeasurementOperator::rows() const {
  if (kind_ != OperatorKind::selection)
    throw std::logic_error("rows() is only defined for selection operators");
  return rows_;
}

const Eigen::MatrixXd& MeasurementOperator::matrix() const {
  if (kind_ == OperatorKind::selection)
    throw std::logic_error("matrix() is not stored for selection operators");
  return matrix_;
}

Eigen::VectorXcd MeasurementOperator::apply(const Eigen::VectorXcd& x) const {
  if (x.size() != n_)
    throw std::invalid_argument("measure: signal length " +
                                std::to_string(x.size()) + " != operator n " +
                                std::to_string(n_));
  Eigen::VectorXcd y(m_);
  if (kind_ == OperatorKind::selection) {
    for (int i = 0; i < m_; ++i) y[i] = x[rows_[i]];
  } else {
    y.real() = matrix_ * x.real();
    y.imag() = matrix_ * x.imag();
  }
  return y;
}

Eigen::VectorXcd MeasurementOperator::apply_adjoint(
    const Eigen::VectorXcd& y) const {
  if (y.size() != m_)
    throw std::invalid_argument("adjoint: measurement length " +
                                std::to_string(y.size()) + " != operator m " +
                                std::to_string(m_));
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(n_);
  if (kind_ == OperatorKind::selection) {
    for (int i = 0; i < m_; ++i) x[rows_[i]] = y[i];
  } else {
    x.real() = matrix_.transpose() * y.real();
    x.imag() = matrix_.transpose() * y.imag();
  }
  return x;
}

MeasurementOperator make_operator(OperatorKind kind, int m, int n,
                                  std::uint64_t seed) {
  if (m < 1 || m > n)
    throw std::invalid_argument("make_operator: need 1 <= m <= n, got m = " +
                                std::to_string(m) + ", n = " +
                                std::to_string(n));
  MeasurementOperator op;
  op.kind_ = kind;
  op.m_ = m;
  op.n_ = n;
  op.seed_ = seed;
  Rng rng(seed);
  switch (kind) {
    case OperatorKind::selection: {
      // partial Fisher-Yates: first m entries are distinct uniform indices
      std::vector<int> indices(n);
      std::iota(indices.begin(), indices.end(), 0);
      for (int i = 0; i < m; ++i) {
        int j = i + static_cast<int>(rng.uniform_index(
                        static_cast<std::uint64_t>(n - i)));
        std::swap(indices[i], indices[j]);
      }
      op.rows_.assign(indices.begin(), indices.begin() + m);
      break;
    }
    case OperatorKind::gaussian: {
      op.matrix_.resize(m, n);
      double scale = 1.0 / std::sqrt(static_cast<double>(m));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) op.matrix_(i, j) = scale * rng.normal();
      break;
    }
    case OperatorKind::bernoulli: {
      op.matrix_.resize(m, n);
      double scale = 1.0 / std::sqrt(static_cast<double>(n));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j)
          op.matrix_(i, j) = rng.uniform() < 0.5 ? scale : -scale;
      break;
    }
  }
  return op;
}

MeasurementVector measure(const MeasurementOperator& op, const TimeSignal& x) {
  return {op.apply(x.samples)};
}

SensingMap::SensingMap(MeasurementOperator op, int n_bins)
    : op_(std::move(op)), dft_(n_bins) {
  if (op_.n() != n_bins)
    throw std::invalid_argument("sensing_map: operator n " +
                                std::to_string(op_.n()) + " != n_bins " +
                                std::to_string(n_bins));
}

void SensingMap::forward(const Eigen::VectorXcd& r,
                         Eigen::VectorXcd& y) const {
  Eigen::VectorXcd time(n());
  dft_.inverse(r, time);
  y = op_.apply(time);
}

void SensingMap::adjoint(const Eigen::VectorXcd& y,
                         Eigen::VectorXcd& r) const {
  Eigen::VectorXcd time = op_.apply_adjoint(y);
  dft_.forward(time, r);
}

Eigen::MatrixXd SensingMap::gram() const {
  if (gram_is_identity()) return Eigen::MatrixXd::Identity(m(), m());
  return op_.matrix() * op_.matrix().transpose();
}

SensingMap sensing_map(MeasurementOperator op, int n_bins) {
  return SensingMap(std::move(op), n_bins);
}

double estimate_rip_constant(const MeasurementOperator& op, int s, int trials,
                             std::uint64_t seed) {
  int n = op.n();
  if (s < 1 || s > n)
    throw std::invalid_argument("estimate_rip_constant: need 1 <= s <= n");
  if (trials < 1)
    throw std::invalid_argument("estimate_rip_constant: trials must be >= 1");

  // selection row lookup so each trial costs O(s) instead of O(m n)
  std::vector<int> row_of;
  if (op.kind() == OperatorKind::selection) {
    row_of.assign(n, -1);
    for (size_t i = 0; i < op.rows().size(); ++i) row_of[op.rows()[i]] = static_cast<int>(i);
  }

  Rng rng(seed);
  std::vector<int> indices(n);
  std::vector<int> support(s);
  std::vector<double> coeffs(s);
  Eigen::VectorXd y(op.m());
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    std::iota(indices.begin(), indices.end(), 0);
    for (int i = 0; i < s; ++i) {
      int j = i + static_cast<int>(rng.uniform_index(
                      static_cast<std::uint64_t>(n - i)));
      std::swap(indices[i], indices[j]);
      support[i] = indices[i];
    }
    double norm2 = 0.0;
    for (int i = 0; i < s; ++i) {
      coeffs[i] = rng.normal();
      norm2 += coeffs[i] * coeffs[i];
    }
    double inv_norm = 1.0 / std::sqrt(norm2);

    double energy = 0.0;
    if (op.kind() == OperatorKind::selection) {
      for (int i = 0; i < s; ++i)
        if (row_of[support[i]] >= 0) {
          double v = coeffs[i] * inv_norm;
          energy += v * v;
        }
    } else {
      y.setZero();
      for (int i = 0; i < s; ++i)
        y += (coeffs[i] * inv_norm) * op.matrix().col(support[i]);
      energy = y.squaredNorm();
    }
    worst = std::max(worst, std::abs(energy - 1.0));
  }
  return worst;
}

}  // namespace specsense
