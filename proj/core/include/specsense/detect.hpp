// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specsense/bandplan.hpp"
#include "specsense/sigmodel.hpp"

namespace specsense {

enum class NormalizeMode { raw, total };

std::string to_string(NormalizeMode mode);
NormalizeMode normalize_mode_from_string(const std::string& name);

/// Per-section l2 energies e_k of a recovered spectrum. In total mode each
/// e_k is divided by ||r||_2 so the squared energies sum to 1; degenerate
/// marks an all-zero vector that could not be normalized.
struct SubbandEnergies {
  std::vector<double> values;
  NormalizeMode mode = NormalizeMode::raw;
  bool degenerate = false;
};

/// Per-section occupancy decisions with confusion counts against the
/// plan's ground truth where it is present.
struct DetectionReport {
  std::vector<bool> occupied;
  double threshold = 0.0;
  int true_positives = 0;
  int false_positives = 0;
  int true_negatives = 0;
  int false_negatives = 0;
};

/// e_k = ||r restricted to section k||_2, optionally normalized by the
/// total norm. An all-zero vector under total mode yields all zeros with
/// the degenerate flag set instead of dividing by zero.
SubbandEnergies subband_energies(const SpectrumVector& r_hat,
                                 const BandPlan& plan, NormalizeMode mode);

/// Energy betterment ratio per section, in percent: for active sections
/// (e_new - e_std)/e_std, for inactive ones (e_std - e_new)/e_std, so a
/// positive value always means the new method did better. Sections whose
/// reference energy is zero come back NaN. Both inputs must share one
/// normalization mode; every section needs ground truth.
std::vector<double> ebr(const SubbandEnergies& e_new,
                        const SubbandEnergies& e_std, const BandPlan& plan);

/// Declares section k occupied when e_k / sqrt(len_k) > threshold; the
/// per-bin normalization keeps wide and narrow sections comparable.
DetectionReport detect_occupancy(const SubbandEnergies& energies,
                                 const BandPlan& plan, double threshold);

/// Threshold from signal-absent recoveries: pools e_k / sqrt(len_k) over
/// all sections of every input and returns the empirical (1 - rate)
/// quantile, so about `rate` of noise-only section statistics exceed it.
double calibrate_threshold(const std::vector<SubbandEnergies>& noise_only,
                           const BandPlan& plan, double false_alarm_rate);

}  // namespace specsense
