// SPDX-License-Identifier: Apache-2.0
#include "specsense/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specsense {

std::string to_string(NormalizeMode mode) {
  return mode == NormalizeMode::raw ? "raw" : "total";
}

NormalizeMode normalize_mode_from_string(const std::string& name) {
  if (name == "raw") return NormalizeMode::raw;
  if (name == "total") return NormalizeMode::total;
  throw std::invalid_argument("unknown normalize mode '" + name +
                              "' (expected raw or total)");
}

SubbandEnergies subband_energies(const SpectrumVector& r_hat,
                                 const BandPlan& plan, NormalizeMode mode) {
  if (r_hat.values.size() != plan.n_bins())
    throw std::invalid_argument("subband_energies: vector length " +
                                std::to_string(r_hat.values.size()) +
                                " != plan bins " +
                                std::to_string(plan.n_bins()));
  SubbandEnergies out;
  out.mode = mode;
  out.values.reserve(plan.section_count());
  for (int k = 0; k < plan.section_count(); ++k) {
    const SectionRange& g = plan.range(k);
    out.values.push_back(r_hat.values.segment(g.start_bin, g.length).norm());
  }
  if (mode == NormalizeMode::total) {
    double total = r_hat.values.norm();
    if (total == 0.0) {
      out.degenerate = true;
    } else {
      for (double& e : out.values) e /= total;
    }
  }
  return out;
}

std::vector<double> ebr(const SubbandEnergies& e_new,
                        const SubbandEnergies& e_std, const BandPlan& plan) {
  size_t k = static_cast<size_t>(plan.section_count());
  if (e_new.values.size() != k || e_std.values.size() != k)
    throw std::invalid_argument("ebr: energies do not match the plan's sections");
  if (e_new.mode != e_std.mode)
    throw std::invalid_argument("ebr: energies use different normalizations");

  std::vector<double> out(k);
  for (size_t i = 0; i < k; ++i) {
    const std::optional<bool>& truth = plan.sections()[i].active_truth;
    if (!truth.has_value())
      throw std::invalid_argument("ebr: section '" + plan.sections()[i].label +
                                  "' has no ground truth");
    double reference = e_std.values[i];
    if (reference == 0.0) {
      out[i] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    double gain = *truth ? e_new.values[i] - reference
                         : reference - e_new.values[i];
    out[i] = 100.0 * gain / reference;
  }
  return out;
}

DetectionReport detect_occupancy(const SubbandEnergies& energies,
                                 const BandPlan& plan, double threshold) {
  if (energies.values.size() != static_cast<size_t>(plan.section_count()))
    throw std::invalid_argument("detect_occupancy: energies do not match the plan");
  if (threshold < 0.0)
    throw std::invalid_argument("detect_occupancy: threshold must be >= 0");

  DetectionReport report;
  report.threshold = threshold;
  report.occupied.reserve(energies.values.size());
  for (int k = 0; k < plan.section_count(); ++k) {
    double per_bin = energies.values[k] / std::sqrt(double(plan.range(k).length));
    bool occupied = per_bin > threshold;
    report.occupied.push_back(occupied);
    const std::optional<bool>& truth = plan.sections()[k].active_truth;
    if (!truth.has_value()) continue;
    if (*truth)
      (occupied ? report.true_positives : report.false_negatives) += 1;
    else
      (occupied ? report.false_positives : report.true_negatives) += 1;
  }
  return report;
}

double calibrate_threshold(const std::vector<SubbandEnergies>& noise_only,
                           const BandPlan& plan, double false_alarm_rate) {
  if (!(false_alarm_rate >= 0.0 && false_alarm_rate <= 1.0))
    throw std::invalid_argument("calibrate_threshold: rate must be in [0, 1]");
  std::vector<double> pooled;
  for (const SubbandEnergies& e : noise_only) {
    if (e.values.size() != static_cast<size_t>(plan.section_count()))
      throw std::invalid_argument("calibrate_threshold: energies do not match the plan");
    for (int k = 0; k < plan.section_count(); ++k)
      pooled.push_back(e.values[k] / std::sqrt(double(plan.range(k).length)));
  }
  if (pooled.empty())
    throw std::invalid_argument("calibrate_threshold: no calibration energies");
  std::sort(pooled.begin(), pooled.end());
  size_t index = static_cast<size_t>(
      std::floor((1.0 - false_alarm_rate) * pooled.size()));
  if (index >= pooled.size()) index = pooled.size() - 1;
  return pooled[index];
}

}  // namespace specsense
