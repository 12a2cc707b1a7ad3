// SPDX-License-Identifier: Apache-2.0
#include "specsense/sigmodel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "specsense/fft.hpp"
#include "specsense/rng.hpp"

namespace specsense {

namespace {

const PsdRange& range_for(const SignalSpec& spec, const Section& section) {
  auto it = spec.psd_ranges.find(section.label);
  if (it == spec.psd_ranges.end())
    throw std::invalid_argument("signal spec: missing PSD range for active section '" +
                                section.label + "'");
  const PsdRange& r = it->second;
  if (!(0.0 <= r.low && r.low <= r.high))
    throw std::invalid_argument("signal spec: PSD range for '" + section.label +
                                "' must satisfy 0 <= low <= high");
  return r;
}

}  // namespace

SpectrumVector generate_spectrum(std::shared_ptr<const BandPlan> plan,
                                 const SignalSpec& spec) {
  if (!plan) throw std::invalid_argument("generate_spectrum: null plan");
  int n = plan->n_bins();
  SpectrumVector out;
  out.values = Eigen::VectorXcd::Zero(n);
  out.plan = plan;
  out.real_valued = spec.real_valued;

  Rng rng(spec.seed);
  for (int k = 0; k < plan->section_count(); ++k) {
    const Section& section = plan->sections()[k];
    if (!section.active_truth.value_or(false)) continue;
    const PsdRange& psd = range_for(spec, section);
    const SectionRange& bins = plan->range(k);
    if (spec.real_valued &&
        (bins.start_bin < 1 || 2 * (bins.start_bin + bins.length) > n))
      throw std::invalid_argument(
          "generate_spectrum: real-valued mode needs active band '" +
          section.label + "' strictly inside (0, n/2) so its conjugate "
          "mirror fits in the upper-half bins");
    for (int b = bins.start_bin; b < bins.start_bin + bins.length; ++b) {
      double magnitude = rng.uniform(psd.low, psd.high);
      double phase = rng.uniform(0.0, 6.283185307179586476925286766559);
      out.values[b] = std::polar(magnitude, phase);
      if (spec.real_valued) out.values[n - b] = std::conj(out.values[b]);
    }
  }
  return out;
}

TimeSignal spectrum_to_time(const SpectrumVector& r) {
  int n = static_cast<int>(r.values.size());
  if (n == 0) throw std::invalid_argument("spectrum_to_time: empty spectrum");
  UnitaryDft dft(n);
  TimeSignal out;
  out.samples = dft.inverse(r.values);
  out.sample_rate_hz =
      r.plan ? (r.plan->f_max_hz() - r.plan->f_min_hz()) : static_cast<double>(n);
  out.real_valued = r.real_valued;
  if (r.real_valued) {
    double worst = out.samples.imag().cwiseAbs().maxCoeff();
    if (worst > 1e-9 * (1.0 + r.values.norm()))
      throw std::invalid_argument(
          "spectrum_to_time: vector flagged real-valued is not conjugate-symmetric");
    out.samples.imag().setZero();
  }
  return out;
}

TimeSignal add_awgn(const TimeSignal& x, double snr_db, std::uint64_t seed) {
  if (snr_db == kNoiselessSnrDb) return x;
  if (!std::isfinite(snr_db))
    throw std::invalid_argument("add_awgn: snr_db must be finite or the noiseless flag");
  int n = static_cast<int>(x.samples.size());
  double signal_power = x.samples.squaredNorm();
  if (signal_power == 0.0)
    throw std::invalid_argument("add_awgn: SNR undefined for an all-zero signal");

  double sigma = std::sqrt(signal_power / (n * std::pow(10.0, snr_db / 10.0)));
  Rng rng(seed);
  TimeSignal out = x;
  if (x.real_valued) {
    for (int i = 0; i < n; ++i) out.samples[i] += sigma * rng.normal();
  } else {
    double scale = sigma / std::sqrt(2.0);  // circularly symmetric
    for (int i = 0; i < n; ++i) {
      auto [a, b] = rng.normal_pair();
      out.samples[i] += std::complex<double>(scale * a, scale * b);
    }
  }
  return out;
}

double expected_signal_power(const BandPlan& plan, const SignalSpec& spec) {
  double power = 0.0;
  for (int k = 0; k < plan.section_count(); ++k) {
    const Section& section = plan.sections()[k];
    if (!section.active_truth.value_or(false)) continue;
    const PsdRange& psd = range_for(spec, section);
    // E[m^2] for m ~ U(low, high)
    double second_moment =
        (psd.low * psd.low + psd.low * psd.high + psd.high * psd.high) / 3.0;
    power += second_moment * plan.range(k).length;
  }
  if (spec.real_valued) power *= 2.0;  // conjugate mirror doubles the energy
  return power;
}

}  // namespace specsense
