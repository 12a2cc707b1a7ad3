// SPDX-License-Identifier: Apache-2.0
#include "specsense/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace specsense {

namespace detail {

// One forward + one backward c2c plan for a fixed length. Planned with
// FFTW_UNALIGNED so execution may run on arbitrary caller buffers, and
// FFTW_ESTIMATE so planning is deterministic.
struct DftPlans {
  int n = 0;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  ~DftPlans();
};

namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::shared_ptr<DftPlans> get_plans(int n) {
  static std::map<int, std::weak_ptr<DftPlans>> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto& slot = cache[n];
  if (auto existing = slot.lock()) return existing;

  auto plans = std::make_shared<DftPlans>();
  plans->n = n;
  Eigen::VectorXcd a(n), b(n);
  auto* in = reinterpret_cast<fftw_complex*>(a.data());
  auto* out = reinterpret_cast<fftw_complex*>(b.data());
  unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans->fwd = fftw_plan_dft_1d(n, in, out, FFTW_FORWARD, flags);
  plans->bwd = fftw_plan_dft_1d(n, in, out, FFTW_BACKWARD, flags);
  if (plans->fwd == nullptr || plans->bwd == nullptr)
    throw std::runtime_error("fftw plan creation failed for n=" +
                             std::to_string(n));
  slot = plans;
  return plans;
}

void execute(fftw_plan plan, const Eigen::VectorXcd& in, Eigen::VectorXcd& out,
             int n) {
  if (in.size() != n)
    throw std::invalid_argument("dft input length mismatch");
  out.resize(n);
  if (in.data() == out.data())
    throw std::invalid_argument("dft requires distinct in/out buffers");
  // new-array execute; in is not modified for an out-of-place c2c plan
  fftw_execute_dft(
      plan,
      reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(
          in.data())),
      reinterpret_cast<fftw_complex*>(out.data()));
  out *= 1.0 / std::sqrt(static_cast<double>(n));
}

}  // namespace

DftPlans::~DftPlans() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (fwd) fftw_destroy_plan(fwd);
  if (bwd) fftw_destroy_plan(bwd);
}

}  // namespace detail

UnitaryDft::UnitaryDft(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("dft length must be positive");
  plans_ = detail::get_plans(n);
}

void UnitaryDft::forward(const Eigen::VectorXcd& in,
                         Eigen::VectorXcd& out) const {
  detail::execute(plans_->fwd, in, out, n_);
}

void UnitaryDft::inverse(const Eigen::VectorXcd& in,
                         Eigen::VectorXcd& out) const {
  detail::execute(plans_->bwd, in, out, n_);
}

}  // namespace specsense
