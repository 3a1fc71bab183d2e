#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xtmon/capmodel.hpp"

namespace xtmon {

enum class Fanout { FO1 = 1, FO2 = 2 };

std::string_view to_string(Fanout fanout) noexcept;
std::optional<Fanout> parse_fanout(std::string_view text) noexcept;
inline int gate_loads(Fanout fanout) noexcept { return static_cast<int>(fanout); }

// Structural parameters of one ring-oscillator variant.
struct RoConfig {
    int n = 100;  // inverter stages
    int m = 64;   // down-counter division factor
    double v_dd = 0.9;
    Fanout fanout = Fanout::FO1;
    std::string geometry = "1W1S";
    double wire_length_um = 50.0;  // informational

    // Throws ValidationError unless n >= 3, m >= 1 and v_dd > 0.
    void validate() const;
};

// One (variant, crosstalk mode) observation. SI units.
struct MeasurementRecord {
    std::string die;
    std::string geometry;
    Fanout fanout = Fanout::FO1;
    CrosstalkMode mode = CrosstalkMode::InPhase;
    double t_osc = 0.0;
    double i_eff = 0.0;
    std::optional<double> i_dda;
    std::optional<double> i_ddq;

    // Throws ValidationError unless t_osc > 0, i_eff > 0 and, when the supply
    // currents are present, i_eff == i_dda - i_ddq >= 0.
    void validate() const;
};

// Builds a record from supply currents, i_eff = i_dda - i_ddq.
MeasurementRecord record_from_supply(std::string die, std::string geometry, Fanout fanout, CrosstalkMode mode,
                                     double t_osc, double i_dda, double i_ddq);

struct DeviceParams {
    double i_dp;  // PMOS saturation current
    double i_dn;  // NMOS saturation current
};

// Aggressor MUX select code (SAx/SBx): 0b00 in-phase, 0b01 out-of-phase,
// 0b11 quiet. 0b10 is the "don't use" state and, like any code above 0b11,
// throws ValidationError.
CrosstalkMode mux_decode(unsigned code);

// SEL low forces the NAND2 output high, so nothing oscillates and no mode
// is active.
std::optional<CrosstalkMode> decode_control(bool sel, unsigned mux_code);

// T = C V (1/I_dp + 1/I_dn)
double stage_delay_from_current(double c_load, double v, const DeviceParams& params);
// T = C V / I
double stage_delay_from_current(double c_load, double v, double i_avg);

// f_d = 1 / (2 n t_s)
double osc_frequency(int n, double t_s);
// T_osc = 2 n m t_s
double counter_period(const RoConfig& config, double t_s);
// t_s = T_osc / (2 n m)
double stage_delay_from_period(const RoConfig& config, double t_osc);

// Per-die ground truth for the forward model.
struct ParasiticTruth {
    double r_sw;
    double c_gate;
    double c_int;  // top + bottom interconnect ground capacitance
    double c_c;    // lateral coupling, one side
};

struct SynthesisOptions {
    std::vector<CrosstalkMode> modes{CrosstalkMode::InPhase, CrosstalkMode::OutOfPhase, CrosstalkMode::Quiet};
    std::vector<Fanout> fanouts{Fanout::FO1, Fanout::FO2};
    double noise_sigma = 0.0;  // relative, multiplicative Gaussian
    std::uint64_t seed = 1;
    std::string die;
};

// Forward model. For every (fanout, mode):
//   t_s   = R_sw * C_eff(mode, C_int + k C_gate, C_c), k = gate loads
//   T_osc = 2 n m t_s
//   I_eff = V_dd / (2 R_sw)
// then T_osc and I_eff are each multiplied by (1 + sigma * N(0,1)).
// Throws ValidationError for sigma < 0 or non-positive truth values and
// NumericError if noise drives a value non-positive.
std::vector<MeasurementRecord> synthesize_measurements(const ParasiticTruth& truth, const RoConfig& config,
                                                       const SynthesisOptions& options = {});

}  // namespace xtmon
