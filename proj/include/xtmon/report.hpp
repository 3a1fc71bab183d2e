#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xtmon/extract.hpp"

namespace xtmon {

enum class ReportFormat { Text, Csv, Json };

std::optional<ReportFormat> parse_report_format(std::string_view text) noexcept;

struct ReportEntry {
    ExtractionResult result;
    std::optional<SpecEntry> spec;
    std::optional<ErrorReport> errors;
};

// Builds entries for a set of results, attaching spec values and errors for
// every geometry present in `spec`.
std::vector<ReportEntry> make_report(const std::vector<ExtractionResult>& results, const SpecTable& spec);

// Text mirrors the usual model/spec comparison table (one column group per
// entry: this work | spec | % error, values in fF and ohm with 2 decimals).
// Json is lossless SI and round-trips through parse_report_json.
std::string emit_report(const std::vector<ReportEntry>& entries, ReportFormat format);

// Inverse of emit_report(..., Json). Throws ParseError on malformed input.
std::vector<ReportEntry> parse_report_json(std::string_view text);

}  // namespace xtmon
