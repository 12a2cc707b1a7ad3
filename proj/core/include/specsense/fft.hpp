// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <memory>

namespace specsense {

namespace detail {
struct DftPlans;
}

/// Unitary N-point DFT. forward() maps time samples to the frequency
/// response (F_N x), inverse() maps back (F_N^{-1} r); both carry the
/// 1/sqrt(N) scale so norms are preserved exactly.
///
/// Plans are cached per length and shared; applying a transform is
/// thread-safe, plan construction is serialized internally.
class UnitaryDft {
 public:
  explicit UnitaryDft(int n);

  int size() const { return n_; }

  void forward(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;
  void inverse(const Eigen::VectorXcd& in, Eigen::VectorXcd& out) const;

  Eigen::VectorXcd forward(const Eigen::VectorXcd& in) const {
    Eigen::VectorXcd out(n_);
    forward(in, out);
    return out;
  }
  Eigen::VectorXcd inverse(const Eigen::VectorXcd& in) const {
    Eigen::VectorXcd out(n_);
    inverse(in, out);
    return out;
  }

 private:
  int n_;
  std::shared_ptr<detail::DftPlans> plans_;
};

}  // namespace specsense
