#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "xtmon/errors.hpp"
#include "xtmon/extract.hpp"
#include "xtmon/measurement_io.hpp"
#include "xtmon/units.hpp"
#include "xtmon/xtalk_analytic.hpp"

using namespace xtmon;

namespace {

std::vector<MeasurementRecord> silicon(const std::string& geometry) {
    std::vector<MeasurementRecord> out;
    for (auto& r : parse_measurements(test::read_data("silicon_ro.csv")))
        if (r.geometry == geometry)
            out.push_back(r);
    return out;
}

RoConfig config_for(const std::string& geometry) {
    RoConfig cfg;
    cfg.geometry = geometry;
    return cfg;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(ExtractFormulas, SwitchingResistance) {
    EXPECT_DOUBLE_EQ(switching_resistance(891.5 * units::uA, 0.9), 0.9 / (2 * 891.5e-6));
    EXPECT_THROW(switching_resistance(0.0, 0.9), ValidationError);
}

TEST(ExtractFormulas, GateAndInterconnectGuards) {
    const RoConfig cfg;
    EXPECT_THROW(gate_capacitance(2e-9, 1e-9, 500.0, cfg), ValidationError);
    EXPECT_THROW(gate_capacitance(1e-9, 1e-9, 500.0, cfg), ValidationError);
    EXPECT_THROW(interconnect_capacitance(1e-9, 2e-9, 500.0, cfg), ValidationError);
    EXPECT_THROW(coupling_capacitance(1e-12, 2e-12, 500.0), NumericError);
}

TEST(ExtractFormulas, TaylorInversionRecoversHalfValues) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> c(1.0, 10.0);
    std::uniform_real_distribution<double> ratio(0.4, 5.0);
    for (int i = 0; i < 100; ++i) {
        const double cap = c(rng) * units::fF;
        const LineRC line(500.0, cap, ratio(rng) * cap, 0.9);
        const double t_o = first_order_delay(CrosstalkMode::OutOfPhase, line);
        const double t_q = first_order_delay(CrosstalkMode::Quiet, line);
        EXPECT_LT(rel(ground_capacitance(t_o, t_q, line.r), line.c / 2), 1e-12);
        EXPECT_LT(rel(coupling_capacitance(t_o, t_q, line.r), line.c_c / 2), 1e-12);
        // With the lump -> distributed factor of two on the delays.
        EXPECT_LT(rel(ground_capacitance(2 * t_o, 2 * t_q, line.r), line.c), 1e-12);
        EXPECT_LT(rel(coupling_capacitance(2 * t_o, 2 * t_q, line.r), line.c_c), 1e-12);
    }
}

TEST(ExtractFormulas, Homogeneity) {
    const RoConfig cfg;
    const double k = 1.7;
    const double c1 = gate_capacitance(80e-9, 100e-9, 500.0, cfg);
    EXPECT_NEAR(gate_capacitance(k * 80e-9, k * 100e-9, 500.0, cfg), k * c1, 1e-12 * c1);
    EXPECT_NEAR(switching_resistance(k * 1e-3, 0.9), switching_resistance(1e-3, 0.9) / k, 1e-9);
}

TEST(ExtractAll, SiliconFixture1W1S) {
    const auto res = extract_all(silicon("1W1S"), config_for("1W1S"));
    EXPECT_NEAR(res.r_sw, 504.77, 0.01);
    EXPECT_NEAR(res.c_gate / units::fF, 3.0475, 1e-3);
    EXPECT_NEAR(res.c_int / units::fF, 9.5914, 1e-3);
    EXPECT_NEAR(res.c_total / units::fF, 12.6389, 1e-3);
    EXPECT_NEAR(res.c_coupling / units::fF, 7.9464, 1e-3);
    EXPECT_NEAR(res.c_s / units::fF, 6.32, 0.01);
    EXPECT_EQ(res.geometry, "1W1S");
    EXPECT_EQ(res.provenance.at("r_sw"), std::vector<std::string>{"FO1/in-phase"});
    EXPECT_EQ(res.provenance.at("c_coupling"),
              (std::vector<std::string>{"FO1/out-of-phase", "FO1/quiet", "FO1/in-phase"}));
}

TEST(ExtractAll, SiliconFixture1W2S) {
    const auto res = extract_all(silicon("1W2S"), config_for("1W2S"));
    EXPECT_NEAR(res.r_sw, 417.03, 0.01);
    EXPECT_NEAR(res.c_gate / units::fF, 3.842, 1e-3);
    EXPECT_NEAR(res.c_int / units::fF, 8.520, 1e-3);
}

TEST(ExtractAll, QuietResistanceRouting) {
    ExtractionOptions opts;
    opts.rsw_mode = RswMode::Quiet;
    const auto res = extract_all(silicon("1W1S"), config_for("1W1S"), opts);
    EXPECT_NEAR(res.r_sw, 0.9 / (2 * 503.47e-6), 1e-6);
    EXPECT_EQ(res.provenance.at("r_sw"), std::vector<std::string>{"FO1/quiet"});
}

TEST(ExtractAll, MissingRecordIsNamed) {
    auto records = silicon("1W1S");
    records.erase(std::remove_if(records.begin(), records.end(),
                                 [](const MeasurementRecord& r) {
                                     return r.fanout == Fanout::FO2 && r.mode == CrosstalkMode::InPhase;
                                 }),
                  records.end());
    try {
        extract_all(records, config_for("1W1S"));
        FAIL() << "expected MissingRecordError";
    } catch (const MissingRecordError& e) {
        EXPECT_NE(std::string(e.what()).find("FO2/in-phase"), std::string::npos);
    }
    EXPECT_THROW(extract_all({}, config_for("1W1S")), MissingRecordError);
}

TEST(ExtractAll, RejectsMixedAndDuplicateRecords) {
    auto mixed = silicon("1W1S");
    mixed.push_back(silicon("1W2S").front());
    EXPECT_THROW(extract_all(mixed, config_for("1W1S")), ValidationError);
    auto dup = silicon("1W1S");
    dup.push_back(dup.front());
    EXPECT_THROW(extract_all(dup, config_for("1W1S")), ValidationError);
}

TEST(ExtractAll, ConstituentFailureCarriesQuantityName) {
    auto records = silicon("1W1S");
    for (auto& r : records)
        if (r.fanout == Fanout::FO1 && r.mode == CrosstalkMode::Quiet)
            r.t_osc = 3.0 * r.t_osc;  // 2 t_o < t_q
    try {
        extract_all(records, config_for("1W1S"));
        FAIL() << "expected NumericError";
    } catch (const NumericError& e) {
        EXPECT_NE(std::string(e.what()).find("while extracting c_coupling"), std::string::npos);
    }
}

TEST(ExtractGroups, OnePerDie) {
    const auto records = parse_measurements(test::read_data("dies_1w1s.csv"));
    const auto results = extract_groups(records, RoConfig{});
    ASSERT_EQ(results.size(), 3u);
    EXPECT_EQ(results[0].die, "die-A");
    EXPECT_NEAR(results[2].c_total / results[0].c_total, 0.8, 1e-12);
}

TEST(RoundTrip, ZeroNoiseRecoversExactQuantities) {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> r(100.0, 2000.0);
    std::uniform_real_distribution<double> c(0.5, 20.0);
    std::uniform_real_distribution<double> ratio(0.0, 2.0);
    const RoConfig cfg;
    for (int i = 0; i < 100; ++i) {
        const double c_gate = c(rng) * units::fF;
        const double c_int = c(rng) * units::fF;
        const double c_prime = c_gate + c_int;
        const ParasiticTruth truth{r(rng), c_gate, c_int, ratio(rng) * c_prime};
        const auto res = extract_all(synthesize_measurements(truth, cfg), cfg);
        EXPECT_LT(rel(res.r_sw, truth.r_sw), 1e-9);
        EXPECT_LT(rel(res.c_gate, truth.c_gate), 1e-9);
        EXPECT_LT(rel(res.c_int, truth.c_int), 1e-9);
        // First-order estimates under the Miller-weighted forward model.
        const double q = c_prime + 2 * truth.c_c;
        const double o = c_prime + 4 * truth.c_c;
        EXPECT_LT(rel(res.c_ground, q * o / (q + o)), 1e-9);
        if (truth.c_c > 0.0) {
            EXPECT_LT(rel(res.c_coupling, 2 * q * o / (3 * (2 * o - q))), 1e-9);
        }
    }
}

TEST(RoundTrip, MonteCarloSpreadFollowsPropagation) {
    const RoConfig cfg;
    const double sigma = 0.01;
    // Gate-heavy load: predicted relative spread of C_gate below 5%.
    const ParasiticTruth heavy{500.0, 5 * units::fF, 2 * units::fF, 0.5 * units::fF};
    // Table-like load: the FO1/FO2 difference is small, so the spread is larger.
    const ParasiticTruth light{505.0, 3.05 * units::fF, 9.59 * units::fF, 0.05 * units::fF};
    for (const ParasiticTruth* tp : {&heavy, &light}) {
        const ParasiticTruth& truth = *tp;
        const double t1 = truth.c_int + truth.c_gate;
        const double t2 = truth.c_int + 2 * truth.c_gate;
        const double predicted =
            std::sqrt(sigma * sigma * (t1 * t1 + t2 * t2) / ((t2 - t1) * (t2 - t1)) + sigma * sigma);

        const int n = 4000;
        double sum = 0.0;
        double sum2 = 0.0;
        SynthesisOptions opts;
        opts.noise_sigma = sigma;
        for (int i = 0; i < n; ++i) {
            opts.seed = 1000 + i;
            const auto res = extract_all(synthesize_measurements(truth, cfg, opts), cfg);
            const double x = res.c_gate / truth.c_gate;
            sum += x;
            sum2 += x * x;
        }
        const double mean = sum / n;
        const double sd = std::sqrt(sum2 / n - mean * mean);
        EXPECT_NEAR(mean, 1.0, 4 * predicted / std::sqrt(n) + 1e-3);
        EXPECT_NEAR(sd, predicted, 0.1 * predicted);
        if (tp == &heavy) {
            EXPECT_LE(sd, 0.05);
        }
    }
}

TEST(CompareToSpec, PercentErrors) {
    const SpecTable spec{{"1W1S", {12.39 * units::fF, 2.54 * units::fF, 9.85 * units::fF, 7.91 * units::fF, 450.0}}};
    ParameterSet p;
    p.geometry = "1W1S";
    p.c_total = 12.51 * units::fF;
    p.r_sw = 504.0;
    const auto e = compare_to_spec(p, spec);
    EXPECT_NEAR(*e.c_total, 0.9685, 1e-3);
    EXPECT_NEAR(*e.r_sw, 12.0, 1e-9);
    EXPECT_NEAR(*e.delay, 13.087, 1e-2);
    EXPECT_FALSE(e.c_gate.has_value());
    p.geometry = "2W2S";
    EXPECT_THROW(compare_to_spec(p, spec), ValidationError);
}
