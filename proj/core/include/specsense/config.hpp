// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace specsense {

/// Raised for malformed or invalid configuration input. The CLI maps it
/// to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parsed node of the block-structured config format:
///
///   # comment
///   key = value
///   block_name {
///     key = value
///   }
///
/// Scalar values are numbers, booleans, bare tokens, or quoted strings.
/// Blocks may repeat (e.g. `band { ... }`); scalar keys may not.
///
/// Typed getters record which fields were read; require_all_consumed()
/// then rejects any field the caller never asked about, so unknown or
/// misspelled keys fail loudly.
class ConfigNode {
 public:
  ConfigNode() = default;

  static ConfigNode parse_file(const std::string& path);
  static ConfigNode parse_string(std::string_view text,
                                 std::string origin = "<string>");

  bool has(const std::string& key) const;

  double get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  /// Full-range unsigned read; seeds use the whole 64-bit space.
  std::uint64_t get_uint64(const std::string& key) const;
  std::uint64_t get_uint64(const std::string& key,
                           std::uint64_t fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;

  /// All blocks with the given name, in file order (possibly empty).
  const std::vector<ConfigNode>& blocks(const std::string& key) const;
  /// Exactly one block with the given name, else error.
  const ConfigNode& block(const std::string& key) const;
  /// Zero or one block; nullptr when absent.
  const ConfigNode* optional_block(const std::string& key) const;

  /// Throws ConfigError naming every field that was never read, at any
  /// depth below this node.
  void require_all_consumed() const;

  const std::string& origin() const { return origin_; }
  int line() const { return line_; }

 private:
  friend struct ConfigNodeBuilder;

  struct Scalar {
    std::string raw;
    bool quoted = false;
    int line = 0;
  };

  const Scalar& find_scalar(const std::string& key) const;
  [[noreturn]] void fail(const std::string& message, int line) const;
  void collect_unconsumed(const std::string& prefix,
                          std::vector<std::string>& out) const;

  std::string origin_;
  int line_ = 0;
  std::map<std::string, Scalar> scalars_;
  std::map<std::string, std::vector<ConfigNode>> blocks_;
  mutable std::set<std::string> consumed_;
  static const std::vector<ConfigNode> kNoBlocks;
};

}  // namespace specsense
