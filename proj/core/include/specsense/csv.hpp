// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

namespace specsense {

/// Shortest-form 17-significant-digit rendering: round-trips every finite
/// double exactly and is locale-independent.
std::string fmt_double(double value);

/// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(const std::string& field);

std::string join_csv_row(const std::vector<std::string>& fields);

/// Splits one line honoring double-quoted fields ("" escapes a quote).
std::vector<std::string> split_csv_line(const std::string& line);

/// All rows of a CSV file, header included. Throws std::runtime_error with
/// the path on I/O failure.
std::vector<std::vector<std::string>> read_csv_file(const std::string& path);

void write_csv_file(const std::string& path,
                    const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows);

}  // namespace specsense
