#include "xtmon/rosc.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "xtmon/errors.hpp"

namespace xtmon {

std::string_view to_string(Fanout fanout) noexcept { return fanout == Fanout::FO1 ? "FO1" : "FO2"; }

std::optional<Fanout> parse_fanout(std::string_view text) noexcept {
    if (text == "FO1")
        return Fanout::FO1;
    if (text == "FO2")
        return Fanout::FO2;
    return std::nullopt;
}

void RoConfig::validate() const {
    if (n < 3)
        throw ValidationError("ring oscillator needs n >= 3 stages, got " + std::to_string(n));
    if (m < 1)
        throw ValidationError("down-counter factor m must be >= 1, got " + std::to_string(m));
    if (!(std::isfinite(v_dd) && v_dd > 0.0))
        throw ValidationError("v_dd must be positive, got " + std::to_string(v_dd));
}

void MeasurementRecord::validate() const {
    if (!(std::isfinite(t_osc) && t_osc > 0.0))
        throw ValidationError("t_osc must be positive");
    if (!(std::isfinite(i_eff) && i_eff > 0.0))
        throw ValidationError("i_eff must be positive");
    if (i_dda.has_value() != i_ddq.has_value())
        throw ValidationError("i_dda and i_ddq must be given together");
    if (i_dda) {
        const double diff = *i_dda - *i_ddq;
        if (diff < 0.0)
            throw ValidationError("i_ddq exceeds i_dda");
        if (std::abs(diff - i_eff) > 1e-12 * std::max(std::abs(*i_dda), std::abs(i_eff)))
            throw ValidationError("i_eff does not equal i_dda - i_ddq");
    }
}

MeasurementRecord record_from_supply(std::string die, std::string geometry, Fanout fanout, CrosstalkMode mode,
                                     double t_osc, double i_dda, double i_ddq) {
    MeasurementRecord r;
    r.die = std::move(die);
    r.geometry = std::move(geometry);
    r.fanout = fanout;
    r.mode = mode;
    r.t_osc = t_osc;
    r.i_eff = i_dda - i_ddq;
    r.i_dda = i_dda;
    r.i_ddq = i_ddq;
    r.validate();
    return r;
}

CrosstalkMode mux_decode(unsigned code) {
    switch (code) {
    case 0b00:
        return CrosstalkMode::InPhase;
    case 0b01:
        return CrosstalkMode::OutOfPhase;
    case 0b11:
        return CrosstalkMode::Quiet;
    case 0b10:
        throw ValidationError("mux select 10 is the \"don't use\" state");
    default:
        throw ValidationError("mux select code must be two bits, got " + std::to_string(code));
    }
}

std::optional<CrosstalkMode> decode_control(bool sel, unsigned mux_code) {
    const CrosstalkMode mode = mux_decode(mux_code);
    if (!sel)
        return std::nullopt;
    return mode;
}

double stage_delay_from_current(double c_load, double v, const DeviceParams& params) {
    if (c_load < 0.0 || !(v > 0.0) || !(params.i_dp > 0.0) || !(params.i_dn > 0.0))
        throw ValidationError("stage_delay_from_current: inputs must be positive");
    return c_load * v * (1.0 / params.i_dp + 1.0 / params.i_dn);
}

double stage_delay_from_current(double c_load, double v, double i_avg) {
    if (c_load < 0.0 || !(v > 0.0) || !(i_avg > 0.0))
        throw ValidationError("stage_delay_from_current: inputs must be positive");
    return c_load * v / i_avg;
}

double osc_frequency(int n, double t_s) {
    if (n < 1 || !(t_s > 0.0))
        throw ValidationError("osc_frequency: need n >= 1 and t_s > 0");
    return 1.0 / (2.0 * n * t_s);
}

double counter_period(const RoConfig& config, double t_s) {
    config.validate();
    if (!(t_s > 0.0))
        throw ValidationError("counter_period: t_s must be positive");
    return 2.0 * config.n * config.m * t_s;
}

double stage_delay_from_period(const RoConfig& config, double t_osc) {
    config.validate();
    if (!(t_osc > 0.0))
        throw ValidationError("stage_delay_from_period: t_osc must be positive");
    return t_osc / (2.0 * config.n * config.m);
}

std::vector<MeasurementRecord> synthesize_measurements(const ParasiticTruth& truth, const RoConfig& config,
                                                       const SynthesisOptions& options) {
    config.validate();
    if (!(options.noise_sigma >= 0.0))
        throw ValidationError("noise sigma must be >= 0");
    if (!(truth.r_sw > 0.0 && truth.c_gate > 0.0 && truth.c_int > 0.0 && truth.c_c >= 0.0))
        throw ValidationError("synthesis truth must have positive R_sw, C_gate, C_int and non-negative C_c");

    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto perturb = [&](double value) {
        if (options.noise_sigma == 0.0)
            return value;
        const double noisy = value * (1.0 + options.noise_sigma * normal(rng));
        if (!(noisy > 0.0))
            throw NumericError("noise drove a synthesized value non-positive; sigma too large");
        return noisy;
    };

    std::vector<MeasurementRecord> records;
    for (Fanout fanout : options.fanouts) {
        const double c_load = truth.c_int + gate_loads(fanout) * truth.c_gate;
        for (CrosstalkMode mode : options.modes) {
            const double t_s = truth.r_sw * effective_capacitance(mode, c_load, truth.c_c);
            MeasurementRecord r;
            r.die = options.die;
            r.geometry = config.geometry;
            r.fanout = fanout;
            r.mode = mode;
            r.t_osc = perturb(counter_period(config, t_s));
            r.i_eff = perturb(config.v_dd / (2.0 * truth.r_sw));
            records.push_back(std::move(r));
        }
    }
    return records;
}

}  // namespace xtmon
