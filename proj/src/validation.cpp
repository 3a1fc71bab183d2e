#include "xtmon/validation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include <json.hpp>

#include "xtmon/transim.hpp"
#include "xtmon/units.hpp"
#include "xtmon/xtalk_analytic.hpp"

namespace xtmon {

namespace {

LineRC random_line(std::mt19937_64& rng, double v_dd) {
    std::uniform_real_distribution<double> r(100.0, 2000.0);
    std::uniform_real_distribution<double> c(1.0, 20.0);
    std::uniform_real_distribution<double> ratio(0.05, 3.0);
    const double cap = c(rng) * units::fF;
    return LineRC(r(rng), cap, ratio(rng) * cap, v_dd);
}

ValidationCheck closed_form_check(const ValidationOptions& opt, std::mt19937_64& rng) {
    ValidationCheck check{"lump simulation vs closed forms", true, 0.0, 1e-4, ""};
    for (int k = 0; k < opt.waveform_draws; ++k) {
        const LineRC line = random_line(rng, opt.v_dd);
        const NetworkStateSpace net = build_network(line, 1);
        const double dt = default_time_step(net);
        const double t_end = default_end_time(net);
        for (CrosstalkMode mode : {CrosstalkMode::InPhase, CrosstalkMode::Quiet}) {
            const auto waves = simulate_step(net, DrivePattern::for_mode(mode, line.v_dd), dt, t_end);
            const Waveform& victim = waves[1];
            for (std::size_t i = 0; i < victim.values.size(); ++i) {
                const double expected = step_response_victim(mode, line, victim.time(i));
                check.metric = std::max(check.metric, std::abs(victim.values[i] - expected) / line.v_dd);
            }
        }
    }
    check.passed = check.metric <= check.limit;
    check.detail = std::to_string(opt.waveform_draws) + " draws, in-phase and quiet, max |error| / V_dd";
    return check;
}

std::vector<ValidationCheck> ordering_checks(const ValidationOptions& opt, std::mt19937_64& rng) {
    ValidationCheck analytic{"delay ordering (analytic)", true, 0.0, 0.0, ""};
    ValidationCheck simulated{"delay ordering (simulated lump)", true, 0.0, 0.0, ""};
    int analytic_violations = 0;
    int simulated_violations = 0;
    for (int k = 0; k < opt.ordering_draws; ++k) {
        const LineRC line = random_line(rng, opt.v_dd);
        const double f = opt.threshold_fraction;

        const double a_in = threshold_delay(CrosstalkMode::InPhase, line, f, ResponseForm::Exact);
        const double a_q = threshold_delay(CrosstalkMode::Quiet, line, f, ResponseForm::Exact);
        const double a_o = threshold_delay(CrosstalkMode::OutOfPhase, line, f, ResponseForm::Exact);
        if (!(a_o >= a_q && a_q >= a_in))
            ++analytic_violations;

        const double s_in = oracle_delay(line, CrosstalkMode::InPhase, 1, f);
        const double s_q = oracle_delay(line, CrosstalkMode::Quiet, 1, f);
        const double s_o = oracle_delay(line, CrosstalkMode::OutOfPhase, 1, f);
        if (!(s_o >= s_q && s_q >= s_in))
            ++simulated_violations;
    }
    analytic.metric = analytic_violations;
    simulated.metric = simulated_violations;
    analytic.passed = analytic_violations == 0;
    simulated.passed = simulated_violations == 0;
    analytic.detail = simulated.detail = "violations of out-of-phase >= quiet >= in-phase over " +
                                         std::to_string(opt.ordering_draws) + " draws";
    return {analytic, simulated};
}

ValidationCheck scaling_check(const ValidationOptions& opt, std::vector<ScalingRow>& rows) {
    ValidationCheck check{"quiet distributed/lump delay ratio", true, 0.0, 0.0, ""};
    double lo = 1e300;
    double hi = -1e300;
    for (double ratio : opt.scaling_coupling_ratios) {
        const LineRC line(500.0, 6.5 * units::fF, ratio * 6.5 * units::fF, opt.v_dd);
        const ScalingPoint p =
            distributed_delay_ratio(line, CrosstalkMode::Quiet, opt.scaling_segments, opt.threshold_fraction);
        rows.push_back({ratio, p.lump_delay, p.distributed_delay, p.ratio()});
        lo = std::min(lo, p.ratio());
        hi = std::max(hi, p.ratio());
    }
    check.passed = lo >= 0.35 && hi <= 0.65;
    check.metric = hi;
    check.limit = 0.65;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d segments, ratio range [%.4f, %.4f], accepted window [0.35, 0.65]",
                  opt.scaling_segments, lo, hi);
    check.detail = buf;
    return check;
}

ValidationCheck halving_check(const ValidationOptions& opt) {
    ValidationCheck check{"time-step halving", true, 0.0, 1e-3, ""};
    const LineRC line(500.0, 6.5 * units::fF, 6.5 * units::fF, opt.v_dd);
    const NetworkStateSpace net = build_network(line, opt.halving_segments);
    const double dt = default_time_step(net);
    for (CrosstalkMode mode : {CrosstalkMode::InPhase, CrosstalkMode::Quiet, CrosstalkMode::OutOfPhase}) {
        const DrivePattern drive = DrivePattern::for_mode(mode, line.v_dd);
        const double thr = opt.threshold_fraction * line.v_dd;
        const double coarse = step_crossing_delay(net, drive, thr, dt);
        const double fine = step_crossing_delay(net, drive, thr, dt / 2.0);
        check.metric = std::max(check.metric, std::abs(coarse - fine) / fine);
    }
    check.passed = check.metric < check.limit;
    check.detail = std::to_string(opt.halving_segments) + " segments, relative delay change, all modes";
    return check;
}

}  // namespace

bool ValidationReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.passed; });
}

ValidationReport run_validation(const ValidationOptions& options) {
    ValidationReport report;
    std::mt19937_64 rng(options.seed);
    report.checks.push_back(closed_form_check(options, rng));
    for (auto& c : ordering_checks(options, rng))
        report.checks.push_back(std::move(c));
    if (!options.scaling_coupling_ratios.empty())
        report.checks.push_back(scaling_check(options, report.scaling));
    report.checks.push_back(halving_check(options));
    return report;
}

std::string emit_validation(const ValidationReport& report, ReportFormat format) {
    char buf[256];
    std::string out;
    switch (format) {
    case ReportFormat::Text:
        for (const auto& c : report.checks) {
            std::snprintf(buf, sizeof buf, "[%s] %-38s metric %-12.6g limit %-10.4g %s\n", c.passed ? "PASS" : "FAIL",
                          c.name.c_str(), c.metric, c.limit, c.detail.c_str());
            out += buf;
        }
        if (!report.scaling.empty()) {
            out += "\nCc/C     lump delay ps   distributed delay ps   ratio\n";
            for (const auto& r : report.scaling) {
                std::snprintf(buf, sizeof buf, "%-8.3g %-15.6g %-22.6g %.4f\n", r.coupling_ratio,
                              r.lump_delay / units::ps, r.distributed_delay / units::ps, r.ratio);
                out += buf;
            }
        }
        out += report.passed() ? "overall: PASS\n" : "overall: FAIL\n";
        return out;
    case ReportFormat::Csv:
        out = "check,passed,metric,limit,detail\n";
        for (const auto& c : report.checks) {
            std::snprintf(buf, sizeof buf, ",%d,%.17g,%.17g,", c.passed ? 1 : 0, c.metric, c.limit);
            out += c.name + buf + "\"" + c.detail + "\"\n";
        }
        if (!report.scaling.empty()) {
            out += "\ncoupling_ratio,lump_delay_s,distributed_delay_s,ratio\n";
            for (const auto& r : report.scaling) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.coupling_ratio, r.lump_delay,
                              r.distributed_delay, r.ratio);
                out += buf;
            }
        }
        return out;
    case ReportFormat::Json:
        break;
    }
    nlohmann::ordered_json root;
    root["format"] = "xtmon-validation/1";
    root["passed"] = report.passed();
    root["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : report.checks) {
        root["checks"].push_back(
            {{"name", c.name}, {"passed", c.passed}, {"metric", c.metric}, {"limit", c.limit}, {"detail", c.detail}});
    }
    root["scaling"] = nlohmann::ordered_json::array();
    for (const auto& r : report.scaling) {
        root["scaling"].push_back({{"coupling_ratio", r.coupling_ratio},
                                   {"lump_delay_s", r.lump_delay},
                                   {"distributed_delay_s", r.distributed_delay},
                                   {"ratio", r.ratio}});
    }
    return root.dump(2) + "\n";
}

}  // namespace xtmon
