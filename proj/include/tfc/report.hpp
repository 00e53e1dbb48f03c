#pragma once

#include "tfc/benchmark.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace tfc::bench {

enum class ReportFormat { aligned_table, comma_separated, json_lines };

std::optional<ReportFormat> parse_report_format(std::string_view name) noexcept;

/// Aligned tables group RT(s), R^2 and lR^2 per holdout, one table per
/// dataset and selection protocol, values at two decimals and the best
/// value of each column marked with '*'.
std::string render_report(const BenchmarkReport& report, ReportFormat format);

/// Inverse of the json-lines rendering. Throws ParseError on bad input.
BenchmarkReport parse_report_json_lines(std::string_view text);

} // namespace tfc::bench
