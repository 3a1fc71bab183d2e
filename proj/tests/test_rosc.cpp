#include <cmath>

#include <gtest/gtest.h>

#include "xtmon/errors.hpp"
#include "xtmon/rosc.hpp"
#include "xtmon/units.hpp"

using namespace xtmon;

TEST(Fanout, NamesAndLoads) {
    EXPECT_EQ(parse_fanout("FO1"), Fanout::FO1);
    EXPECT_EQ(parse_fanout(to_string(Fanout::FO2)), Fanout::FO2);
    EXPECT_FALSE(parse_fanout("FO3").has_value());
    EXPECT_EQ(gate_loads(Fanout::FO2), 2);
}

TEST(RoConfig, Validation) {
    RoConfig cfg;
    EXPECT_NO_THROW(cfg.validate());
    cfg.m = 0;
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg = RoConfig{};
    cfg.n = 2;
    EXPECT_THROW(cfg.validate(), ValidationError);
    cfg = RoConfig{};
    cfg.v_dd = 0.0;
    EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(MuxDecode, SelectCodes) {
    EXPECT_EQ(mux_decode(0b00), CrosstalkMode::InPhase);
    EXPECT_EQ(mux_decode(0b01), CrosstalkMode::OutOfPhase);
    EXPECT_EQ(mux_decode(0b11), CrosstalkMode::Quiet);
    EXPECT_THROW(mux_decode(0b10), ValidationError);
    EXPECT_THROW(mux_decode(4), ValidationError);
}

TEST(MuxDecode, SelLowDisablesOscillation) {
    for (unsigned code : {0u, 1u, 3u})
        EXPECT_FALSE(decode_control(false, code).has_value());
    EXPECT_EQ(decode_control(true, 0b11), CrosstalkMode::Quiet);
    EXPECT_THROW(decode_control(true, 0b10), ValidationError);
}

TEST(StageDelay, CurrentForms) {
    EXPECT_DOUBLE_EQ(stage_delay_from_current(10e-15, 0.9, 100e-6), 10e-15 * 0.9 / 100e-6);
    EXPECT_DOUBLE_EQ(stage_delay_from_current(10e-15, 0.9, DeviceParams{100e-6, 50e-6}),
                     10e-15 * 0.9 * (1 / 100e-6 + 1 / 50e-6));
    EXPECT_THROW(stage_delay_from_current(10e-15, 0.9, 0.0), ValidationError);
}

TEST(Period, CounterAlgebra) {
    RoConfig cfg;
    const double t_s = 6.38e-12;
    const double f_d = osc_frequency(cfg.n, t_s);
    EXPECT_DOUBLE_EQ(f_d, 1.0 / (2 * cfg.n * t_s));
    const double t_osc = counter_period(cfg, t_s);
    EXPECT_NEAR(t_osc * f_d, cfg.m, 1e-12 * cfg.m);
    EXPECT_NEAR(stage_delay_from_period(cfg, t_osc), t_s, 1e-24);
    EXPECT_THROW(stage_delay_from_period(cfg, 0.0), ValidationError);
}

TEST(MeasurementRecord, SupplyCurrentDifference) {
    const auto r = record_from_supply("", "1W1S", Fanout::FO1, CrosstalkMode::InPhase, 81.66 * units::ns,
                                      891.6 * units::uA, 0.1 * units::uA);
    EXPECT_NEAR(r.i_eff, 891.5 * units::uA, 1e-15);
    EXPECT_THROW(record_from_supply("", "1W1S", Fanout::FO1, CrosstalkMode::InPhase, 1e-9, 1e-6, 2e-6),
                 ValidationError);
}

TEST(Synthesize, ZeroNoiseForwardModel) {
    RoConfig cfg;
    const ParasiticTruth truth{500.0, 3 * units::fF, 9 * units::fF, 1 * units::fF};
    const auto records = synthesize_measurements(truth, cfg);
    ASSERT_EQ(records.size(), 6u);
    for (const auto& r : records) {
        const double load = truth.c_int + gate_loads(r.fanout) * truth.c_gate;
        const double t_s = truth.r_sw * effective_capacitance(r.mode, load, truth.c_c);
        EXPECT_DOUBLE_EQ(r.t_osc, 2.0 * cfg.n * cfg.m * t_s);
        EXPECT_DOUBLE_EQ(r.i_eff, cfg.v_dd / (2 * truth.r_sw));
        EXPECT_EQ(r.geometry, cfg.geometry);
    }
}

TEST(Synthesize, NoiseIsSeededAndReproducible) {
    RoConfig cfg;
    const ParasiticTruth truth{500.0, 3 * units::fF, 9 * units::fF, 1 * units::fF};
    SynthesisOptions opts;
    opts.noise_sigma = 0.01;
    opts.seed = 42;
    const auto a = synthesize_measurements(truth, cfg, opts);
    const auto b = synthesize_measurements(truth, cfg, opts);
    opts.seed = 43;
    const auto c = synthesize_measurements(truth, cfg, opts);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].t_osc, b[i].t_osc);
        EXPECT_NE(a[i].t_osc, c[i].t_osc);
    }
}

TEST(Synthesize, RejectsBadInputs) {
    RoConfig cfg;
    SynthesisOptions opts;
    opts.noise_sigma = -0.1;
    EXPECT_THROW(synthesize_measurements({500.0, 3e-15, 9e-15, 0.0}, cfg, opts), ValidationError);
    EXPECT_THROW(synthesize_measurements({0.0, 3e-15, 9e-15, 0.0}, cfg), ValidationError);
}
