#pragma once

#include <optional>
#include <string_view>

namespace xtmon {

// Switching relation between the victim wire and its two lateral aggressors.
enum class CrosstalkMode { Quiet, InPhase, OutOfPhase };

std::string_view to_string(CrosstalkMode mode) noexcept;

// Accepts "quiet", "in-phase" and "out-of-phase" (underscores also allowed).
std::optional<CrosstalkMode> parse_mode(std::string_view text) noexcept;

// Per-wire capacitance decomposition: area and fringe terms towards the
// layers above and below, plus the lateral coupling to ONE neighbour.
// All values in farads, all non-negative.
class CapacitanceSet {
public:
    CapacitanceSet(double c_ta, double c_ba, double c_ft, double c_fb, double c_c);

    double c_ta() const noexcept { return c_ta_; }
    double c_ba() const noexcept { return c_ba_; }
    double c_ft() const noexcept { return c_ft_; }
    double c_fb() const noexcept { return c_fb_; }
    double c_c() const noexcept { return c_c_; }

private:
    double c_ta_;
    double c_ba_;
    double c_ft_;
    double c_fb_;
    double c_c_;
};

// c_ta + 2 c_ft
double top_capacitance(const CapacitanceSet& set) noexcept;
// c_ba + 2 c_fb
double bottom_capacitance(const CapacitanceSet& set) noexcept;
// c_top + c_bottom; the only way a ground capacitance is formed from a set.
double ground_capacitance(const CapacitanceSet& set) noexcept;
// c_top + c_bottom + 2 c_c (coupling counted once per side)
double total_capacitance(const CapacitanceSet& set) noexcept;

// Miller-weighted capacitance seen by the victim:
//   Quiet      c_gnd + 2 c_c
//   InPhase    c_gnd
//   OutOfPhase c_gnd + 4 c_c
// Throws ValidationError for negative inputs.
double effective_capacitance(CrosstalkMode mode, double c_gnd, double c_c);

}  // namespace xtmon
