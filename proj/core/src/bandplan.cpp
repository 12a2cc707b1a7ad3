// SPDX-License-Identifier: Apache-2.0
#include "specsense/bandplan.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "specsense/config.hpp"

namespace specsense {

namespace {

std::string hz_str(double f_hz) {
  std::ostringstream out;
  out << f_hz;
  return out.str();
}

[[noreturn]] void invalid(const std::string& message) {
  throw std::invalid_argument("band plan: " + message);
}

// Frequency -> bin-boundary index. Edges more than 1e-6 bins off the grid
// are rejected, never rounded.
int snap_edge(double f_hz, double f_min_hz, double df_hz, int n_bins,
              const std::string& what) {
  double t = (f_hz - f_min_hz) / df_hz;
  double rounded = std::round(t);
  if (std::abs(t - rounded) > 1e-6)
    invalid(what + ": edge " + hz_str(f_hz) + " Hz is not on the " +
            hz_str(df_hz) + " Hz bin grid");
  if (rounded < 0.0 || rounded > static_cast<double>(n_bins))
    invalid(what + ": edge " + hz_str(f_hz) +
            " Hz is outside the monitored range");
  return static_cast<int>(rounded);
}

}  // namespace

BandPlan::BandPlan(double f_min_hz, double f_max_hz, int n_bins,
                   std::vector<Section> sections)
    : f_min_hz_(f_min_hz),
      f_max_hz_(f_max_hz),
      n_bins_(n_bins),
      sections_(std::move(sections)) {
  if (!(f_min_hz_ < f_max_hz_)) invalid("f_min must be below f_max");
  if (n_bins_ < 1) invalid("n_bins must be positive");
  if (sections_.empty()) invalid("at least one section is required");

  double df = bin_width_hz();
  ranges_.reserve(sections_.size());
  int expected_start = 0;
  for (const Section& s : sections_) {
    std::string what = "section '" + s.label + "'";
    if (!(s.f_lo_hz < s.f_hi_hz)) invalid(what + ": f_lo must be below f_hi");
    int lo = snap_edge(s.f_lo_hz, f_min_hz_, df, n_bins_, what);
    int hi = snap_edge(s.f_hi_hz, f_min_hz_, df, n_bins_, what);
    if (lo != expected_start)
      invalid(what + ": starts at bin " + std::to_string(lo) +
              ", expected bin " + std::to_string(expected_start) +
              " (sections must tile the monitored range)");
    if (hi <= lo) invalid(what + ": spans no bins");
    ranges_.push_back({lo, hi - lo});
    expected_start = hi;
  }
  if (expected_start != n_bins_)
    invalid("sections end at bin " + std::to_string(expected_start) +
            ", expected bin " + std::to_string(n_bins_) +
            " (sections must tile the monitored range)");
}

std::vector<ActiveBand> BandPlan::active_bands() const {
  std::vector<ActiveBand> out;
  for (const Section& s : sections_)
    if (s.active_truth.value_or(false))
      out.push_back({s.f_lo_hz, s.f_hi_hz, s.label});
  return out;
}

std::vector<SectionRange> section_index_ranges(const BandPlan& plan) {
  std::vector<SectionRange> out;
  out.reserve(plan.section_count());
  for (int k = 0; k < plan.section_count(); ++k) out.push_back(plan.range(k));
  return out;
}

BandPlan bandplan_from_bands(double f_min_hz, double f_max_hz, int n_bins,
                             const std::vector<ActiveBand>& bands) {
  if (!(f_min_hz < f_max_hz)) invalid("f_min must be below f_max");
  if (n_bins < 1) invalid("n_bins must be positive");
  double df = (f_max_hz - f_min_hz) / n_bins;

  std::vector<Section> sections;
  int cursor_bin = 0;
  double cursor_hz = f_min_hz;
  int gap_count = 0;
  for (const ActiveBand& b : bands) {
    std::string what = "band '" + b.label + "'";
    if (!(b.f_lo_hz < b.f_hi_hz)) invalid(what + ": f_lo must be below f_hi");
    int lo = snap_edge(b.f_lo_hz, f_min_hz, df, n_bins, what);
    int hi = snap_edge(b.f_hi_hz, f_min_hz, df, n_bins, what);
    if (lo < cursor_bin)
      invalid(what + ": overlaps or is out of order with the previous band");
    if (hi <= lo) invalid(what + ": spans no bins");
    if (lo > cursor_bin) {
      ++gap_count;
      sections.push_back(
          {cursor_hz, b.f_lo_hz, "gap" + std::to_string(gap_count), false});
    }
    sections.push_back({b.f_lo_hz, b.f_hi_hz, b.label, true});
    cursor_bin = hi;
    cursor_hz = b.f_hi_hz;
  }
  if (cursor_bin < n_bins) {
    ++gap_count;
    sections.push_back(
        {cursor_hz, f_max_hz, "gap" + std::to_string(gap_count), false});
  }
  return BandPlan(f_min_hz, f_max_hz, n_bins, std::move(sections));
}

BandPlan parse_bandplan(const ConfigNode& node) {
  try {
    double f_min = node.get_double("f_min_hz");
    double f_max = node.get_double("f_max_hz");
    std::int64_t n_bins = node.get_int("n_bins");
    if (n_bins < 1 || n_bins > 100000000)
      throw ConfigError(node.origin() + ": n_bins out of range");
    std::vector<ActiveBand> bands;
    int index = 0;
    for (const ConfigNode& b : node.blocks("band")) {
      ++index;
      ActiveBand band;
      band.f_lo_hz = b.get_double("f_lo_hz");
      band.f_hi_hz = b.get_double("f_hi_hz");
      band.label = b.get_string("label", "band" + std::to_string(index));
      bands.push_back(std::move(band));
    }
    return bandplan_from_bands(f_min, f_max, static_cast<int>(n_bins), bands);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(node.origin() + ": " + e.what());
  }
}

BandPlan load_bandplan_file(const std::string& path) {
  ConfigNode root = ConfigNode::parse_file(path);
  BandPlan plan = parse_bandplan(root);
  root.require_all_consumed();
  return plan;
}

}  // namespace specsense
