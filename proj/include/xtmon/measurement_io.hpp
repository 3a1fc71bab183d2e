#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "xtmon/rosc.hpp"

namespace xtmon {

// Plain-text measurement interchange format:
//
//   # format: xtmon-measurements/1
//   # units: t_osc=ns current=uA
//   die,geometry,fanout,mode,t_osc,i_eff,i_dda,i_ddq
//   ,1W1S,FO1,in-phase,81.66,891.50,,
//
// The two directives are mandatory and must precede the column header.
// Other '#' lines and blank lines are ignored. Columns may appear in any
// order; geometry, fanout, mode and t_osc are required, die is optional,
// and each row needs i_eff or both i_dda and i_ddq (i_eff = i_dda - i_ddq).
// Time units: s ms us ns ps. Current units: A mA uA nA.

// Parses and converts to SI. Throws ParseError (1-based line and column) for
// syntax, unit and domain problems, including duplicate
// (die, geometry, fanout, mode) rows. Never throws anything else.
std::vector<MeasurementRecord> parse_measurements(std::string_view text);

// Writes records in the same format with ns/uA units and round-trip
// precision.
std::string format_measurements(const std::vector<MeasurementRecord>& records);

}  // namespace xtmon
