#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "xtmon/errors.hpp"
#include "xtmon/transim.hpp"
#include "xtmon/units.hpp"

using namespace xtmon;

TEST(BuildNetwork, RejectsZeroSegments) {
    const LineRC line(500.0, 5 * units::fF, 2 * units::fF, 0.9);
    EXPECT_THROW(build_network(line, 0), ValidationError);
}

TEST(BuildNetwork, ConservesTotalCapacitanceAndResistance) {
    const LineRC line(500.0, 5 * units::fF, 2 * units::fF, 0.9);
    for (int n : {1, 2, 7, 20}) {
        const auto net = build_network(line, n);
        EXPECT_EQ(net.node_count(), 3 * n);
        // Coupling stamps cancel in the full sum; only ground capacitance remains.
        double sum = 0.0;
        for (int k = 0; k < net.capacitance.outerSize(); ++k)
            for (Eigen::SparseMatrix<double>::InnerIterator it(net.capacitance, k); it; ++it)
                sum += it.value();
        EXPECT_NEAR(sum, 3 * line.c, 1e-12 * line.c);
        // Source conductance feeding each line equals segments / R.
        EXPECT_NEAR(net.input.coeff(net.node(1, 0), 1), n / line.r, 1e-12 * n / line.r);
        EXPECT_EQ(net.observed[1], net.node(1, n - 1));
        EXPECT_GT(net.max_time_constant, net.min_time_constant);
    }
}

TEST(BuildNetwork, LumpTimeConstantsAreModePoles) {
    const LineRC line(500.0, 5 * units::fF, 2 * units::fF, 0.9);
    const auto net = build_network(line, 1);
    EXPECT_NEAR(net.min_time_constant, line.tau(), 1e-9 * line.tau());
    EXPECT_NEAR(net.max_time_constant, line.tau() + 3 * line.tau_coupling(), 1e-9 * line.tau());
}

TEST(SimulateStep, InPhaseLumpIsSingleExponential) {
    const LineRC line(800.0, 4 * units::fF, 3 * units::fF, 0.9);
    const auto net = build_network(line, 1);
    const auto waves = simulate_step(net, DrivePattern::for_mode(CrosstalkMode::InPhase, 0.9),
                                     default_time_step(net), 10 * line.tau());
    ASSERT_EQ(waves.size(), 3u);
    EXPECT_EQ(waves[1].label, "B");
    for (std::size_t i = 0; i < waves[1].values.size(); i += 17) {
        const double t = waves[1].time(i);
        const double expect = 0.9 * (1.0 - std::exp(-t / line.tau()));
        EXPECT_NEAR(waves[1].values[i], expect, 1e-9);
        EXPECT_NEAR(waves[0].values[i], expect, 1e-9);
    }
}

TEST(SimulateStep, QuietLumpKeepsAggressorsSymmetric) {
    const LineRC line(800.0, 4 * units::fF, 3 * units::fF, 0.9);
    const auto net = build_network(line, 3);
    const auto waves = simulate_step(net, DrivePattern::for_mode(CrosstalkMode::Quiet, 0.9),
                                     default_time_step(net), 20 * net.max_time_constant);
    for (std::size_t i = 0; i < waves[0].values.size(); ++i)
        EXPECT_NEAR(waves[0].values[i], waves[2].values[i], 1e-12);
    EXPECT_NEAR(waves[0].values.back(), 0.0, 1e-3);
}

TEST(SimulateStep, RejectsCoarseStep) {
    const LineRC line(800.0, 4 * units::fF, 3 * units::fF, 0.9);
    const auto net = build_network(line, 1);
    const auto drive = DrivePattern::for_mode(CrosstalkMode::Quiet, 0.9);
    EXPECT_THROW(simulate_step(net, drive, net.min_time_constant / 10.0, 1e-9), ValidationError);
    EXPECT_THROW(simulate_step(net, drive, -1.0, 1e-9), ValidationError);
}

TEST(CrossingTime, InterpolatesLinearly) {
    Waveform w{1.0, {0.0, 0.2, 0.6, 1.0}, "x"};
    EXPECT_DOUBLE_EQ(crossing_time(w, 0.4), 1.5);
    EXPECT_DOUBLE_EQ(crossing_time(w, 1.0), 3.0);
    EXPECT_THROW(crossing_time(w, 1.5), NumericError);
    Waveform high{1.0, {0.5, 0.6}, "y"};
    EXPECT_THROW(crossing_time(high, 0.4), NumericError);
}

TEST(StepCrossingDelay, MatchesStoredWaveform) {
    const LineRC line(600.0, 5 * units::fF, 5 * units::fF, 0.9);
    const auto net = build_network(line, 4);
    for (auto mode : {CrosstalkMode::InPhase, CrosstalkMode::Quiet, CrosstalkMode::OutOfPhase}) {
        const auto drive = DrivePattern::for_mode(mode, line.v_dd);
        const double dt = default_time_step(net);
        const auto waves = simulate_step(net, drive, dt, default_end_time(net));
        // Linear and Hermite interpolation inside one step differ by O(dt^2 / tau).
        const double stored = crossing_time(waves[1], 0.45);
        EXPECT_NEAR(step_crossing_delay(net, drive, 0.45, dt), stored, 0.01 * dt);
    }
}

TEST(OracleDelay, LumpMatchesExactClosedForm) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> c(1.0, 10.0);
    std::uniform_real_distribution<double> ratio(0.05, 3.0);
    for (int i = 0; i < 10; ++i) {
        const double cap = c(rng) * units::fF;
        const LineRC line(400.0, cap, ratio(rng) * cap, 0.9);
        for (auto mode : {CrosstalkMode::InPhase, CrosstalkMode::Quiet, CrosstalkMode::OutOfPhase}) {
            const double analytic = threshold_delay(mode, line, 0.5, ResponseForm::Exact);
            EXPECT_NEAR(oracle_delay(line, mode, 1), analytic, 1e-5 * analytic);
        }
    }
}

TEST(FrequencyResponse, LumpFinalValueIsDriveAmplitude) {
    const LineRC line(600.0, 5 * units::fF, 2 * units::fF, 0.9);
    const auto net = build_network(line, 5);
    // s V(s) -> v(inf) as s -> 0 for a step.
    const std::complex<double> s(1e-6 / net.max_time_constant, 0.0);
    const auto v = frequency_response(net, DrivePattern::for_mode(CrosstalkMode::OutOfPhase, 0.9), s);
    EXPECT_NEAR((s * v[1]).real(), 0.9, 1e-5);
    EXPECT_NEAR((s * v[0]).real(), -0.9, 1e-5);
}

TEST(DistributedRatio, UncoupledLineNearElmoreRatio) {
    // A uniform RC line crosses 50% near 0.38 RC against RC ln2 for one lump.
    const LineRC line(500.0, 5 * units::fF, 0.0, 0.9);
    const auto p = distributed_delay_ratio(line, CrosstalkMode::InPhase, 20);
    EXPECT_GT(p.ratio(), 0.5);
    EXPECT_LT(p.ratio(), 0.6);
    EXPECT_NEAR(p.lump_delay, line.tau() * std::log(2.0), 1e-5 * p.lump_delay);
}
