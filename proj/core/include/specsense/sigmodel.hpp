// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <string>

#include "specsense/bandplan.hpp"

namespace specsense {

/// Complex frequency-response vector over a band plan's bin grid.
/// plan may be null for vectors produced outside a plan context
/// (e.g. raw solver outputs on synthetic instances).
struct SpectrumVector {
  Eigen::VectorXcd values;
  std::shared_ptr<const BandPlan> plan;
  /// True when the vector was built conjugate-symmetric (real-signal mode).
  bool real_valued = false;
};

/// Nyquist-rate time samples of the monitored band. Samples are stored
/// complex; real_valued marks vectors whose imaginary parts are exactly
/// zero (conjugate-symmetric spectra).
struct TimeSignal {
  Eigen::VectorXcd samples;
  double sample_rate_hz = 0.0;
  bool real_valued = false;
};

/// Magnitude bounds for one active section's per-bin levels.
struct PsdRange {
  double low = 0.0;
  double high = 0.0;
};

constexpr double kNoiselessSnrDb = std::numeric_limits<double>::infinity();

/// Parameters of the synthetic signal: per-active-section magnitude ranges
/// (keyed by section label), target SNR, RNG seed, and whether to build a
/// conjugate-symmetric (real time-domain) spectrum instead of the default
/// complex-baseband one.
struct SignalSpec {
  std::map<std::string, PsdRange> psd_ranges;
  double snr_db = kNoiselessSnrDb;
  std::uint64_t seed = 0;
  bool real_valued = false;
};

/// Draws a spectrum over the plan: every bin of an active section gets a
/// magnitude uniform in that section's range and a phase uniform on
/// [0, 2pi); inactive-section bins are exactly zero. In real-valued mode
/// active bands must lie strictly inside (0, n/2) and are mirrored into
/// the conjugate upper-half bins. Deterministic per (plan, spec).
SpectrumVector generate_spectrum(std::shared_ptr<const BandPlan> plan,
                                 const SignalSpec& spec);

/// Unitary inverse DFT of the spectrum; sample rate is the monitored
/// bandwidth. Conjugate-symmetric inputs come out with imaginary parts
/// zeroed (after checking they are numerically negligible).
TimeSignal spectrum_to_time(const SpectrumVector& r);

/// Adds white Gaussian noise at the requested SNR:
/// per-sample noise variance sigma^2 = ||x||^2 / (n * 10^(snr_db/10)),
/// circularly symmetric for complex signals, real for real-valued ones.
/// snr_db = kNoiselessSnrDb returns x unchanged; an all-zero x with a
/// finite SNR is rejected (SNR undefined).
TimeSignal add_awgn(const TimeSignal& x, double snr_db, std::uint64_t seed);

/// Analytic E||r||^2 of generate_spectrum's output: sum over active bins
/// of the uniform-magnitude second moment (lo^2 + lo*hi + hi^2)/3. Used to
/// set noise levels for signal-absent calibration trials.
double expected_signal_power(const BandPlan& plan, const SignalSpec& spec);

}  // namespace specsense
