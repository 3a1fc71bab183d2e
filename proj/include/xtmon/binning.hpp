#pragma once

#include <string>
#include <vector>

#include "xtmon/extract.hpp"
#include "xtmon/report.hpp"

namespace xtmon {

struct BinningEntry {
    std::string die;
    double delay_proxy = 0.0;         // R_sw * C_total
    double clock_scale = 1.0;         // slowest proxy / this proxy
    double normalized_runtime = 1.0;  // 1 / clock_scale
    double improvement_pct = 0.0;     // (clock_scale - 1) * 100
};

struct DieProxy {
    std::string die;
    double delay_proxy;
};

// Clock binning against the slowest die. Scales are invariant under a
// uniform rescaling of all proxies. Throws ValidationError on empty input
// or a non-positive proxy.
std::vector<BinningEntry> monitor_binning(const std::vector<DieProxy>& dies);
std::vector<BinningEntry> monitor_binning(const std::vector<ExtractionResult>& results);

std::string emit_binning(const std::vector<BinningEntry>& entries, ReportFormat format);

}  // namespace xtmon
