#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "xtmon/report.hpp"

namespace xtmon {

struct ValidationOptions {
    std::uint64_t seed = 2024;
    int waveform_draws = 20;     // lump oracle vs closed forms
    int ordering_draws = 100;    // out-of-phase >= quiet >= in-phase
    int scaling_segments = 50;   // distributed line for the quiet-mode ratio
    std::vector<double> scaling_coupling_ratios{0.1, 0.5, 1.0, 2.0};  // Cc / C
    int halving_segments = 10;   // network used for the time-step halving check
    double threshold_fraction = 0.5;
    double v_dd = 0.9;
};

struct ValidationCheck {
    std::string name;
    bool passed = false;
    double metric = 0.0;  // worst observed value
    double limit = 0.0;   // acceptance bound on the metric
    std::string detail;
};

struct ScalingRow {
    double coupling_ratio;  // Cc / C
    double lump_delay;
    double distributed_delay;
    double ratio;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    std::vector<ScalingRow> scaling;

    bool passed() const noexcept;
};

// Closed forms against the lumped network simulation, delay ordering in the
// analytic and simulated paths, quiet-mode distributed/lump delay ratios and
// time-step convergence of the simulator.
ValidationReport run_validation(const ValidationOptions& options = {});

std::string emit_validation(const ValidationReport& report, ReportFormat format);

}  // namespace xtmon
