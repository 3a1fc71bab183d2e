#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xtmon/extract.hpp"
#include "xtmon/rosc.hpp"
#include "xtmon/xtalk_analytic.hpp"

namespace xtmon {

// Per-geometry bindings. Capacitances in the file are fF, resistances ohm;
// everything here is SI.
struct GeometryBinding {
    std::optional<LineRC> line;          // lumped line for the waveform models
    std::optional<SpecEntry> spec;       // design specification values
    std::optional<ParasiticTruth> truth; // forward-model truth for synthesis
};

struct ConfigFile {
    RoConfig ro;  // n, m, v_dd (geometry/fanout are per record)
    RswMode rsw_mode = RswMode::InPhase;
    double threshold_fraction = 0.5;
    int oracle_segments = 50;
    double noise_sigma = 0.0;
    std::uint64_t seed = 1;
    std::map<std::string, GeometryBinding> geometries;
    std::vector<std::string> warnings;  // unknown keys, with the list of known ones

    SpecTable spec_table() const;
    RoConfig ro_for(const std::string& geometry) const;
};

// JSON config. n, m and v_dd are mandatory; there is no silent default for
// them. Example:
//
//   {
//     "n": 100, "m": 64, "v_dd": 0.9,
//     "rsw_mode": "in-phase", "threshold_fraction": 0.5,
//     "oracle_segments": 50, "noise_sigma": 0.0, "seed": 1,
//     "geometries": {
//       "1W1S": {
//         "line":  {"r_ohm": 504, "c_fF": 6.6, "c_c_fF": 8.0},
//         "spec":  {"c_total_fF": 12.39, "c_gate_fF": 2.54, "c_int_fF": 9.85,
//                   "c_c_fF": 7.91, "r_sw_ohm": 450},
//         "truth": {"r_sw_ohm": 504, "c_gate_fF": 3.0, "c_int_fF": 9.5, "c_c_fF": 1.0}
//       }
//     }
//   }
//
// Throws ParseError for malformed JSON (with line/column) and
// ValidationError for missing or out-of-range values.
ConfigFile parse_config(std::string_view text);

}  // namespace xtmon
