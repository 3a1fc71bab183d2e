#include "xtmon/binning.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "xtmon/errors.hpp"

namespace xtmon {

std::vector<BinningEntry> monitor_binning(const std::vector<DieProxy>& dies) {
    if (dies.empty())
        throw ValidationError("binning needs at least one die");
    double slowest = 0.0;
    for (const auto& d : dies) {
        if (!(d.delay_proxy > 0.0) || !std::isfinite(d.delay_proxy))
            throw ValidationError("die '" + d.die + "' has a non-positive delay proxy");
        slowest = std::max(slowest, d.delay_proxy);
    }
    std::vector<BinningEntry> out;
    out.reserve(dies.size());
    for (const auto& d : dies) {
        BinningEntry e;
        e.die = d.die;
        e.delay_proxy = d.delay_proxy;
        e.clock_scale = slowest / d.delay_proxy;
        e.normalized_runtime = d.delay_proxy / slowest;
        e.improvement_pct = (e.clock_scale - 1.0) * 100.0;
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<BinningEntry> monitor_binning(const std::vector<ExtractionResult>& results) {
    std::vector<DieProxy> dies;
    dies.reserve(results.size());
    for (const auto& r : results) {
        std::string name = r.die.empty() ? r.geometry : r.die;
        if (!r.die.empty() && !r.geometry.empty())
            name += ":" + r.geometry;
        dies.push_back({std::move(name), r.r_sw * r.c_total});
    }
    return monitor_binning(dies);
}

std::string emit_binning(const std::vector<BinningEntry>& entries, ReportFormat format) {
    char buf[160];
    std::string out;
    switch (format) {
    case ReportFormat::Text: {
        std::size_t width = 3;
        for (const auto& e : entries)
            width = std::max(width, e.die.size());
        std::snprintf(buf, sizeof buf, "%-*s  %14s  %11s  %18s  %13s\n", static_cast<int>(width), "die",
                      "delay proxy ps", "clock scale", "normalized runtime", "improvement %");
        out += buf;
        for (const auto& e : entries) {
            std::snprintf(buf, sizeof buf, "%-*s  %14.4f  %11.4f  %18.4f  %13.2f\n", static_cast<int>(width),
                          e.die.c_str(), e.delay_proxy * 1e12, e.clock_scale, e.normalized_runtime,
                          e.improvement_pct);
            out += buf;
        }
        return out;
    }
    case ReportFormat::Csv:
        out = "die,delay_proxy_s,clock_scale,normalized_runtime,improvement_pct\n";
        for (const auto& e : entries) {
            std::snprintf(buf, sizeof buf, ",%.17g,%.17g,%.17g,%.17g\n", e.delay_proxy, e.clock_scale,
                          e.normalized_runtime, e.improvement_pct);
            out += e.die + buf;
        }
        return out;
    case ReportFormat::Json:
        break;
    }
    nlohmann::ordered_json root;
    root["format"] = "xtmon-binning/1";
    root["dies"] = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        root["dies"].push_back({{"die", e.die},
                                {"delay_proxy_s", e.delay_proxy},
                                {"clock_scale", e.clock_scale},
                                {"normalized_runtime", e.normalized_runtime},
                                {"improvement_pct", e.improvement_pct}});
    }
    return root.dump(2) + "\n";
}

}  // namespace xtmon
