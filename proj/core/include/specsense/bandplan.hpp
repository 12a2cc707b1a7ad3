// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace specsense {

class ConfigNode;

/// One contiguous frequency section of the monitored band. active_truth is
/// ground truth for the simulation harness; solvers only ever see section
/// bin ranges, never this flag.
struct Section {
  double f_lo_hz = 0.0;
  double f_hi_hz = 0.0;
  std::string label;
  std::optional<bool> active_truth;
};

/// A declared-occupied band, the input form for building a plan.
struct ActiveBand {
  double f_lo_hz = 0.0;
  double f_hi_hz = 0.0;
  std::string label;
};

/// Bin range of one section: bins [start_bin, start_bin + length).
struct SectionRange {
  int start_bin = 0;
  int length = 0;
};

/// Fixed partition of the monitored band [f_min, f_max) into K contiguous
/// sections whose edges lie on the bin grid. Bin k covers
/// [f_min + k*df, f_min + (k+1)*df), df = (f_max - f_min)/n_bins.
/// Immutable after construction; safe to share across threads.
class BandPlan {
 public:
  /// Validates all invariants: sections tile [f_min, f_max] in order, every
  /// edge on the bin grid, each section at least one bin wide. Throws
  /// std::invalid_argument naming the offending section otherwise.
  BandPlan(double f_min_hz, double f_max_hz, int n_bins,
           std::vector<Section> sections);

  double f_min_hz() const { return f_min_hz_; }
  double f_max_hz() const { return f_max_hz_; }
  int n_bins() const { return n_bins_; }
  double bin_width_hz() const { return (f_max_hz_ - f_min_hz_) / n_bins_; }
  /// Lower edge frequency of a bin.
  double bin_freq_hz(int bin) const { return f_min_hz_ + bin * bin_width_hz(); }

  const std::vector<Section>& sections() const { return sections_; }
  int section_count() const { return static_cast<int>(sections_.size()); }
  const SectionRange& range(int section) const { return ranges_.at(section); }

  /// The sections carrying active_truth = true, in order.
  std::vector<ActiveBand> active_bands() const;

 private:
  double f_min_hz_;
  double f_max_hz_;
  int n_bins_;
  std::vector<Section> sections_;
  std::vector<SectionRange> ranges_;
};

/// Bin ranges of all sections in order; consecutive and exhaustive over
/// 0..n_bins-1 (lengths are the group sizes the grouped solver uses).
std::vector<SectionRange> section_index_ranges(const BandPlan& plan);

/// Builds the full partition from the active bands alone, inserting
/// inactive gap sections (labeled gap1, gap2, ...) between and around them.
/// Bands must be sorted, non-overlapping, inside [f_min, f_max], edges on
/// the bin grid. Zero bands yields a single all-inactive section.
BandPlan bandplan_from_bands(double f_min_hz, double f_max_hz, int n_bins,
                             const std::vector<ActiveBand>& bands);

/// Reads a plan from a parsed config node: scalars f_min_hz, f_max_hz,
/// n_bins plus repeated band { f_lo_hz, f_hi_hz, label } blocks. Invariant
/// violations surface as ConfigError.
BandPlan parse_bandplan(const ConfigNode& node);

/// Parses a stand-alone band-plan file; rejects unknown fields.
BandPlan load_bandplan_file(const std::string& path);

}  // namespace specsense
