#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xtmon/rosc.hpp"

namespace xtmon {

// C_s = T_osc I_eff / (2 m n V_dd). Meant for the in-phase record, where
// the coupling contribution cancels.
double stage_capacitance(double t_osc, double i_eff, const RoConfig& config);

// R_sw = V_dd / (2 I_eff)
double switching_resistance(double i_eff, double v_dd);

// C_gate = (T_osc2 - T_osc1) / (2 m n R_sw). Throws ValidationError unless
// t_osc2 > t_osc1.
double gate_capacitance(double t_osc1, double t_osc2, double r_sw, const RoConfig& config);

// C_int = (2 T_osc1 - T_osc2) / (2 m n R_sw). Throws ValidationError unless
// 2 t_osc1 > t_osc2.
double interconnect_capacitance(double t_osc1, double t_osc2, double r_sw, const RoConfig& config);

// C = T_o T_q / (R (T_o + T_q)) from per-stage out-of-phase and quiet delays.
double ground_capacitance(double t_o, double t_q, double r);

// C_c = 2 T_o T_q / (3 R (2 T_o - T_q)). Throws NumericError unless
// 2 t_o > t_q.
double coupling_capacitance(double t_o, double t_q, double r);

// Which FO1 current feeds R_sw. In-phase reproduces the published resistor
// values; quiet follows the alternative prose prescription.
enum class RswMode { InPhase, Quiet };

std::string_view to_string(RswMode mode) noexcept;
std::optional<RswMode> parse_rsw_mode(std::string_view text) noexcept;

struct ExtractionOptions {
    RswMode rsw_mode = RswMode::InPhase;
};

struct ExtractionResult {
    std::string die;
    std::string geometry;
    double r_sw = 0.0;
    double c_s = 0.0;
    double c_gate = 0.0;
    double c_int = 0.0;
    double c_total = 0.0;
    double c_ground = 0.0;    // first-order C
    double c_coupling = 0.0;  // first-order C_c
    double t_osc1 = 0.0;      // FO1 in-phase period
    double t_osc2 = 0.0;      // FO2 in-phase period
    double t_o = 0.0;         // FO1 out-of-phase stage delay
    double t_q = 0.0;         // FO1 quiet stage delay
    // quantity name -> records ("FO1/in-phase", ...) it was computed from
    std::map<std::string, std::vector<std::string>> provenance;
};

// Runs the full extraction on the records of one die and geometry.
// Needs FO1 and FO2 in-phase plus FO1 out-of-phase and quiet records.
// Throws MissingRecordError naming the absent (fanout, mode) pair,
// ValidationError for mixed dies/geometries or duplicate records, and
// re-raises constituent failures with the quantity name prepended.
ExtractionResult extract_all(const std::vector<MeasurementRecord>& records, const RoConfig& config,
                             const ExtractionOptions& options = {});

using RecordGroupKey = std::pair<std::string, std::string>;  // (die, geometry)

std::map<RecordGroupKey, std::vector<MeasurementRecord>> group_records(const std::vector<MeasurementRecord>& records);

// extract_all over every (die, geometry) group, in key order.
std::vector<ExtractionResult> extract_groups(const std::vector<MeasurementRecord>& records, const RoConfig& config,
                                             const ExtractionOptions& options = {});

// Subset of parameters that can be compared against a specification.
// Anything a given method cannot estimate stays empty.
struct ParameterSet {
    std::string geometry;
    std::optional<double> c_total;
    std::optional<double> c_gate;
    std::optional<double> c_int;
    std::optional<double> c_c;
    std::optional<double> r_sw;
};

ParameterSet comparable(const ExtractionResult& result);

struct SpecEntry {
    double c_total;
    double c_gate;
    double c_int;
    double c_c;
    double r_sw;
};

using SpecTable = std::map<std::string, SpecEntry>;

// Relative errors against the specification, in percent.
struct ErrorReport {
    std::string geometry;
    std::optional<double> c_total;
    std::optional<double> c_gate;
    std::optional<double> c_int;
    std::optional<double> c_c;
    std::optional<double> r_sw;
    // |R_sw C_total - R_spec C_spec| / (R_spec C_spec)
    std::optional<double> delay;
};

// Throws ValidationError if the geometry has no entry in the table.
ErrorReport compare_to_spec(const ParameterSet& params, const SpecTable& spec);
ErrorReport compare_to_spec(const ExtractionResult& result, const SpecTable& spec);

}  // namespace xtmon
