#include "xtmon/extract.hpp"

#include <algorithm>
#include <cmath>

#include "xtmon/errors.hpp"

namespace xtmon {

namespace {

void require_positive(double value, const char* name) {
    if (!(std::isfinite(value) && value > 0.0))
        throw ValidationError(std::string(name) + " must be positive, got " + std::to_string(value));
}

double counter_scale(const RoConfig& config) {
    config.validate();
    return 2.0 * config.m * config.n;
}

std::string record_name(Fanout fanout, CrosstalkMode mode) {
    return std::string(to_string(fanout)) + "/" + std::string(to_string(mode));
}

// Re-raise with the quantity being computed, keeping the error category.
template <typename F>
double in_context(const char* quantity, F&& compute) {
    const std::string prefix = std::string("while extracting ") + quantity + ": ";
    try {
        return compute();
    } catch (const MissingRecordError& e) {
        throw MissingRecordError(prefix + e.what());
    } catch (const ValidationError& e) {
        throw ValidationError(prefix + e.what());
    } catch (const NumericError& e) {
        throw NumericError(prefix + e.what());
    }
}

double relative_percent(double value, double reference) { return std::abs(value - reference) / reference * 100.0; }

}  // namespace

double stage_capacitance(double t_osc, double i_eff, const RoConfig& config) {
    require_positive(t_osc, "t_osc");
    require_positive(i_eff, "i_eff");
    return t_osc * i_eff / (counter_scale(config) * config.v_dd);
}

double switching_resistance(double i_eff, double v_dd) {
    require_positive(i_eff, "i_eff");
    require_positive(v_dd, "v_dd");
    return v_dd / (2.0 * i_eff);
}

double gate_capacitance(double t_osc1, double t_osc2, double r_sw, const RoConfig& config) {
    require_positive(t_osc1, "t_osc1");
    require_positive(r_sw, "r_sw");
    if (!(t_osc2 > t_osc1))
        throw ValidationError("FO2 period must exceed the FO1 period (t_osc2 = " + std::to_string(t_osc2) +
                              " s, t_osc1 = " + std::to_string(t_osc1) + " s)");
    return (t_osc2 - t_osc1) / (counter_scale(config) * r_sw);
}

double interconnect_capacitance(double t_osc1, double t_osc2, double r_sw, const RoConfig& config) {
    require_positive(t_osc1, "t_osc1");
    require_positive(t_osc2, "t_osc2");
    require_positive(r_sw, "r_sw");
    if (!(2.0 * t_osc1 > t_osc2))
        throw ValidationError("interconnect capacitance is non-positive: 2 t_osc1 must exceed t_osc2");
    return (2.0 * t_osc1 - t_osc2) / (counter_scale(config) * r_sw);
}

double ground_capacitance(double t_o, double t_q, double r) {
    require_positive(t_o, "t_o");
    require_positive(t_q, "t_q");
    require_positive(r, "r");
    return t_o * t_q / (r * (t_o + t_q));
}

double coupling_capacitance(double t_o, double t_q, double r) {
    require_positive(t_o, "t_o");
    require_positive(t_q, "t_q");
    require_positive(r, "r");
    if (!(2.0 * t_o > t_q))
        throw NumericError("coupling capacitance is degenerate: 2 t_o must exceed t_q");
    return 2.0 * t_o * t_q / (3.0 * r * (2.0 * t_o - t_q));
}

std::string_view to_string(RswMode mode) noexcept { return mode == RswMode::InPhase ? "in-phase" : "quiet"; }

std::optional<RswMode> parse_rsw_mode(std::string_view text) noexcept {
    if (text == "in-phase" || text == "in_phase")
        return RswMode::InPhase;
    if (text == "quiet")
        return RswMode::Quiet;
    return std::nullopt;
}

ExtractionResult extract_all(const std::vector<MeasurementRecord>& records, const RoConfig& config,
                             const ExtractionOptions& options) {
    config.validate();
    if (records.empty())
        throw MissingRecordError("no measurement records supplied");

    std::map<std::pair<Fanout, CrosstalkMode>, const MeasurementRecord*> index;
    for (const auto& r : records) {
        if (r.die != records.front().die || r.geometry != records.front().geometry)
            throw ValidationError("extract_all needs records of a single die and geometry; found '" +
                                  records.front().die + "/" + records.front().geometry + "' and '" + r.die + "/" +
                                  r.geometry + "'");
        r.validate();
        if (!index.emplace(std::make_pair(r.fanout, r.mode), &r).second)
            throw ValidationError("duplicate record " + record_name(r.fanout, r.mode));
    }

    auto need = [&](Fanout fanout, CrosstalkMode mode) -> const MeasurementRecord& {
        const auto it = index.find({fanout, mode});
        if (it == index.end())
            throw MissingRecordError("missing measurement record " + record_name(fanout, mode) + " for " +
                                     records.front().geometry);
        return *it->second;
    };

    const MeasurementRecord& in1 = need(Fanout::FO1, CrosstalkMode::InPhase);
    const MeasurementRecord& in2 = need(Fanout::FO2, CrosstalkMode::InPhase);
    const MeasurementRecord& out1 = need(Fanout::FO1, CrosstalkMode::OutOfPhase);
    const MeasurementRecord& quiet1 = need(Fanout::FO1, CrosstalkMode::Quiet);
    const MeasurementRecord& rsw_source = options.rsw_mode == RswMode::InPhase ? in1 : quiet1;

    ExtractionResult res;
    res.die = records.front().die;
    res.geometry = records.front().geometry;
    res.t_osc1 = in1.t_osc;
    res.t_osc2 = in2.t_osc;
    res.t_o = stage_delay_from_period(config, out1.t_osc);
    res.t_q = stage_delay_from_period(config, quiet1.t_osc);

    res.r_sw = in_context("r_sw", [&] { return switching_resistance(rsw_source.i_eff, config.v_dd); });
    res.c_s = in_context("c_s", [&] { return stage_capacitance(in1.t_osc, in1.i_eff, config); });
    res.c_gate = in_context("c_gate", [&] { return gate_capacitance(res.t_osc1, res.t_osc2, res.r_sw, config); });
    res.c_int = in_context("c_int", [&] { return interconnect_capacitance(res.t_osc1, res.t_osc2, res.r_sw, config); });
    res.c_total = res.c_gate + res.c_int;
    res.c_ground = in_context("c_ground", [&] { return ground_capacitance(res.t_o, res.t_q, res.r_sw); });
    res.c_coupling = in_context("c_coupling", [&] { return coupling_capacitance(res.t_o, res.t_q, res.r_sw); });

    const std::string rsw_name = record_name(rsw_source.fanout, rsw_source.mode);
    const std::string in1_name = record_name(Fanout::FO1, CrosstalkMode::InPhase);
    const std::string in2_name = record_name(Fanout::FO2, CrosstalkMode::InPhase);
    const std::string out1_name = record_name(Fanout::FO1, CrosstalkMode::OutOfPhase);
    const std::string quiet1_name = record_name(Fanout::FO1, CrosstalkMode::Quiet);
    auto with_rsw = [&](std::vector<std::string> v) {
        if (std::find(v.begin(), v.end(), rsw_name) == v.end())
            v.push_back(rsw_name);
        return v;
    };
    res.provenance["r_sw"] = {rsw_name};
    res.provenance["c_s"] = {in1_name};
    res.provenance["c_gate"] = with_rsw({in1_name, in2_name});
    res.provenance["c_int"] = with_rsw({in1_name, in2_name});
    res.provenance["c_total"] = with_rsw({in1_name, in2_name});
    res.provenance["c_ground"] = with_rsw({out1_name, quiet1_name});
    res.provenance["c_coupling"] = with_rsw({out1_name, quiet1_name});
    return res;
}

std::map<RecordGroupKey, std::vector<MeasurementRecord>> group_records(const std::vector<MeasurementRecord>& records) {
    std::map<RecordGroupKey, std::vector<MeasurementRecord>> groups;
    for (const auto& r : records)
        groups[{r.die, r.geometry}].push_back(r);
    return groups;
}

std::vector<ExtractionResult> extract_groups(const std::vector<MeasurementRecord>& records, const RoConfig& config,
                                             const ExtractionOptions& options) {
    std::vector<ExtractionResult> out;
    for (const auto& [key, group] : group_records(records)) {
        RoConfig cfg = config;
        cfg.geometry = key.second;
        out.push_back(extract_all(group, cfg, options));
    }
    return out;
}

ParameterSet comparable(const ExtractionResult& result) {
    ParameterSet p;
    p.geometry = result.geometry;
    p.c_total = result.c_total;
    p.c_gate = result.c_gate;
    p.c_int = result.c_int;
    p.c_c = result.c_coupling;
    p.r_sw = result.r_sw;
    return p;
}

ErrorReport compare_to_spec(const ParameterSet& params, const SpecTable& spec) {
    const auto it = spec.find(params.geometry);
    if (it == spec.end())
        throw ValidationError("no specification entry for geometry '" + params.geometry + "'");
    const SpecEntry& ref = it->second;

    auto rel = [](const std::optional<double>& value, double reference) -> std::optional<double> {
        if (!value)
            return std::nullopt;
        return relative_percent(*value, reference);
    };

    ErrorReport report;
    report.geometry = params.geometry;
    report.c_total = rel(params.c_total, ref.c_total);
    report.c_gate = rel(params.c_gate, ref.c_gate);
    report.c_int = rel(params.c_int, ref.c_int);
    report.c_c = rel(params.c_c, ref.c_c);
    report.r_sw = rel(params.r_sw, ref.r_sw);
    if (params.r_sw && params.c_total)
        report.delay = relative_percent(*params.r_sw * *params.c_total, ref.r_sw * ref.c_total);
    return report;
}

ErrorReport compare_to_spec(const ExtractionResult& result, const SpecTable& spec) {
    return compare_to_spec(comparable(result), spec);
}

}  // namespace xtmon
