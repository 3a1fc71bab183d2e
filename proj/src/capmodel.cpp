#include "xtmon/capmodel.hpp"

#include <cmath>
#include <string>

#include "xtmon/errors.hpp"

namespace xtmon {

std::string_view to_string(CrosstalkMode mode) noexcept {
    switch (mode) {
    case CrosstalkMode::Quiet:
        return "quiet";
    case CrosstalkMode::InPhase:
        return "in-phase";
    case CrosstalkMode::OutOfPhase:
        return "out-of-phase";
    }
    return "?";
}

std::optional<CrosstalkMode> parse_mode(std::string_view text) noexcept {
    if (text == "quiet")
        return CrosstalkMode::Quiet;
    if (text == "in-phase" || text == "in_phase")
        return CrosstalkMode::InPhase;
    if (text == "out-of-phase" || text == "out_of_phase")
        return CrosstalkMode::OutOfPhase;
    return std::nullopt;
}

namespace {

void require_capacitance(double value, const char* name) {
    if (!std::isfinite(value) || value < 0.0)
        throw ValidationError(std::string(name) + " must be a finite non-negative capacitance, got " +
                              std::to_string(value));
}

}  // namespace

CapacitanceSet::CapacitanceSet(double c_ta, double c_ba, double c_ft, double c_fb, double c_c)
    : c_ta_(c_ta), c_ba_(c_ba), c_ft_(c_ft), c_fb_(c_fb), c_c_(c_c) {
    require_capacitance(c_ta, "c_ta");
    require_capacitance(c_ba, "c_ba");
    require_capacitance(c_ft, "c_ft");
    require_capacitance(c_fb, "c_fb");
    require_capacitance(c_c, "c_c");
}

double top_capacitance(const CapacitanceSet& set) noexcept { return set.c_ta() + 2.0 * set.c_ft(); }

double bottom_capacitance(const CapacitanceSet& set) noexcept { return set.c_ba() + 2.0 * set.c_fb(); }

double ground_capacitance(const CapacitanceSet& set) noexcept {
    return top_capacitance(set) + bottom_capacitance(set);
}

double total_capacitance(const CapacitanceSet& set) noexcept {
    return top_capacitance(set) + bottom_capacitance(set) + 2.0 * set.c_c();
}

double effective_capacitance(CrosstalkMode mode, double c_gnd, double c_c) {
    require_capacitance(c_gnd, "c_gnd");
    require_capacitance(c_c, "c_c");
    switch (mode) {
    case CrosstalkMode::Quiet:
        return c_gnd + 2.0 * c_c;
    case CrosstalkMode::InPhase:
        return c_gnd;
    case CrosstalkMode::OutOfPhase:
        return c_gnd + 4.0 * c_c;
    }
    throw ValidationError("unknown crosstalk mode");
}

}  // namespace xtmon
