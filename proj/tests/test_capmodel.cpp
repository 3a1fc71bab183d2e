#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "xtmon/capmodel.hpp"
#include "xtmon/errors.hpp"
#include "xtmon/units.hpp"

using namespace xtmon;

TEST(CrosstalkModeNames, RoundTrip) {
    for (auto mode : {CrosstalkMode::Quiet, CrosstalkMode::InPhase, CrosstalkMode::OutOfPhase})
        EXPECT_EQ(parse_mode(to_string(mode)), mode);
    EXPECT_EQ(parse_mode("out_of_phase"), CrosstalkMode::OutOfPhase);
    EXPECT_FALSE(parse_mode("shielded").has_value());
    EXPECT_FALSE(parse_mode("").has_value());
}

TEST(CapacitanceSet, RejectsNegativeAndNonFinite) {
    EXPECT_THROW(CapacitanceSet(-1e-15, 0, 0, 0, 0), ValidationError);
    EXPECT_THROW(CapacitanceSet(0, 0, 0, 0, -1e-18), ValidationError);
    EXPECT_THROW(CapacitanceSet(0, std::nan(""), 0, 0, 0), ValidationError);
    EXPECT_NO_THROW(CapacitanceSet(0, 0, 0, 0, 0));
}

TEST(CapacitanceSet, TopBottomDecomposition) {
    const CapacitanceSet set(1.0, 2.0, 0.5, 0.25, 3.0);
    EXPECT_EQ(top_capacitance(set), 2.0);
    EXPECT_EQ(bottom_capacitance(set), 2.5);
    EXPECT_EQ(ground_capacitance(set), 4.5);
    EXPECT_EQ(total_capacitance(set), 10.5);
}

TEST(EffectiveCapacitance, ZeroCouplingCollapsesAllModes) {
    for (auto mode : {CrosstalkMode::Quiet, CrosstalkMode::InPhase, CrosstalkMode::OutOfPhase})
        EXPECT_EQ(effective_capacitance(mode, 7 * units::fF, 0.0), 7 * units::fF);
}

TEST(EffectiveCapacitance, RejectsNegativeInputs) {
    EXPECT_THROW(effective_capacitance(CrosstalkMode::Quiet, -1e-15, 0.0), ValidationError);
    EXPECT_THROW(effective_capacitance(CrosstalkMode::OutOfPhase, 1e-15, -1e-15), ValidationError);
}

TEST(EffectiveCapacitance, RandomizedIdentities) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int i = 0; i < 10000; ++i) {
        const CapacitanceSet set(u(rng) * units::fF, u(rng) * units::fF, u(rng) * units::fF, u(rng) * units::fF,
                                 u(rng) * units::fF);
        const double gnd = ground_capacitance(set);
        const double cc = set.c_c();
        EXPECT_EQ(effective_capacitance(CrosstalkMode::Quiet, gnd, cc), total_capacitance(set));
        EXPECT_EQ(effective_capacitance(CrosstalkMode::InPhase, gnd, cc), gnd);
        EXPECT_EQ(effective_capacitance(CrosstalkMode::OutOfPhase, gnd, cc), gnd + 4.0 * cc);
        EXPECT_EQ(effective_capacitance(CrosstalkMode::Quiet, gnd, cc), gnd + 2.0 * cc);
        EXPECT_LE(effective_capacitance(CrosstalkMode::InPhase, gnd, cc),
                  effective_capacitance(CrosstalkMode::Quiet, gnd, cc));
        EXPECT_LE(effective_capacitance(CrosstalkMode::Quiet, gnd, cc),
                  effective_capacitance(CrosstalkMode::OutOfPhase, gnd, cc));
    }
}
