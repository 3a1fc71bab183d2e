#pragma once

#include <string>
#include <vector>

#include "xtmon/transim.hpp"

namespace xtmon {

// Columns: time_s followed by one column per waveform label. All waveforms
// must share dt; shorter ones are padded with their last value. Throws
// ValidationError for an empty set or mismatched time steps.
std::string waveforms_to_csv(const std::vector<Waveform>& waves);

// Standalone SVG line plot of the waveforms (time in ps on x, volts on y).
std::string waveforms_to_svg(const std::vector<Waveform>& waves, const std::string& title);

}  // namespace xtmon
