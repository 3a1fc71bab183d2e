#include <gtest/gtest.h>

#include "test_support.hpp"
#include "xtmon/config.hpp"
#include "xtmon/errors.hpp"
#include "xtmon/units.hpp"

using namespace xtmon;

TEST(ParseConfig, MinimalAccepted) {
    const auto cfg = parse_config(R"({"n": 100, "m": 64, "v_dd": 0.9})");
    EXPECT_EQ(cfg.ro.n, 100);
    EXPECT_EQ(cfg.ro.m, 64);
    EXPECT_DOUBLE_EQ(cfg.ro.v_dd, 0.9);
    EXPECT_EQ(cfg.rsw_mode, RswMode::InPhase);
    EXPECT_TRUE(cfg.warnings.empty());
}

TEST(ParseConfig, MandatoryFields) {
    EXPECT_THROW(parse_config(R"({"n": 100, "m": 64})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"n": 100, "m": 0, "v_dd": 0.9})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"n": 100.5, "m": 64, "v_dd": 0.9})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"n": 100, "m": 64, "v_dd": -0.9})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"n": 100, "m": 64, "v_dd": "0.9"})"), ValidationError);
}

TEST(ParseConfig, UnknownKeyWarnsWithKnownKeys) {
    const auto cfg = parse_config(R"({"n": 100, "m": 64, "v_dd": 0.9, "vdd": 1.0})");
    ASSERT_EQ(cfg.warnings.size(), 1u);
    EXPECT_NE(cfg.warnings[0].find("'vdd'"), std::string::npos);
    EXPECT_NE(cfg.warnings[0].find("v_dd"), std::string::npos);
    EXPECT_NE(cfg.warnings[0].find("rsw_mode"), std::string::npos);
}

TEST(ParseConfig, MalformedJsonReportsPosition) {
    try {
        parse_config("{\n  \"n\": 100,\n  \"m\": ,\n}");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_GE(e.column(), 8u);
    }
    EXPECT_THROW(parse_config("[1, 2]"), ParseError);
}

TEST(ParseConfig, OptionsAndRanges) {
    EXPECT_THROW(parse_config(R"({"n": 100, "m": 64, "v_dd": 0.9, "rsw_mode": "average"})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"n": 100, "m": 64, "v_dd": 0.9, "threshold_fraction": 1.0})"), ValidationError);
    EXPECT_THROW(parse_config(R"({"n": 100, "m": 64, "v_dd": 0.9, "noise_sigma": -0.1})"), ValidationError);
    const auto cfg = parse_config(
        R"({"n": 100, "m": 64, "v_dd": 0.9, "rsw_mode": "quiet", "oracle_segments": 20, "seed": 9})");
    EXPECT_EQ(cfg.rsw_mode, RswMode::Quiet);
    EXPECT_EQ(cfg.oracle_segments, 20);
    EXPECT_EQ(cfg.seed, 9u);
}

TEST(ParseConfig, BundledConfig) {
    const auto cfg = parse_config(test::read_data("config.json"));
    EXPECT_TRUE(cfg.warnings.empty());
    ASSERT_EQ(cfg.geometries.size(), 2u);
    const auto& g = cfg.geometries.at("1W1S");
    ASSERT_TRUE(g.line && g.spec && g.truth);
    EXPECT_DOUBLE_EQ(g.spec->c_total, 12.39 * units::fF);
    EXPECT_DOUBLE_EQ(g.line->v_dd, 0.9);
    EXPECT_EQ(cfg.spec_table().size(), 2u);
    EXPECT_EQ(cfg.ro_for("1W2S").geometry, "1W2S");
}

TEST(ParseConfig, GeometryValuesValidated) {
    EXPECT_THROW(parse_config(R"({"n": 100, "m": 64, "v_dd": 0.9,
        "geometries": {"g": {"line": {"r_ohm": 0, "c_fF": 1, "c_c_fF": 1}}}})"),
                 ValidationError);
    EXPECT_THROW(parse_config(R"({"n": 100, "m": 64, "v_dd": 0.9, "geometries": {"g": 3}})"), ValidationError);
}
