#include "xtmon/xtalk_analytic.hpp"

#include <cmath>
#include <string>

#include "xtmon/errors.hpp"

namespace xtmon {

LineRC::LineRC(double r_, double c_, double c_c_, double v_dd_) : r(r_), c(c_), c_c(c_c_), v_dd(v_dd_) {
    if (!(std::isfinite(r) && r > 0.0))
        throw ValidationError("line resistance must be positive, got " + std::to_string(r));
    if (!(std::isfinite(c) && c > 0.0))
        throw ValidationError("line capacitance must be positive, got " + std::to_string(c));
    if (!(std::isfinite(c_c) && c_c >= 0.0))
        throw ValidationError("coupling capacitance must be non-negative, got " + std::to_string(c_c));
    if (!(std::isfinite(v_dd) && v_dd > 0.0))
        throw ValidationError("v_dd must be positive, got " + std::to_string(v_dd));
}

LumpCoefficients lump_coefficients(const LineRC& line) noexcept {
    const double r = line.r;
    const double c = line.c;
    const double cc = line.c_c;
    const double r2 = r * r;

    LumpCoefficients k{};
    k.a1 = 2.0 * r * c + 3.0 * r * cc;
    k.a2 = r2 * c * c + r2 * cc * cc + 3.0 * r2 * c * cc;
    k.a3 = r * cc;
    k.a4 = r2 * cc * cc + r2 * c * cc;
    k.a5 = r2 * cc * cc;
    k.a6 = r * cc;
    k.a7 = r * c + r * cc;
    k.a8 = r * cc;
    k.b1 = r * c;
    k.b2 = r * c + r * cc;
    k.b3 = r * c + 3.0 * r * cc;
    k.b4 = r * c;
    k.b5 = r * c + 3.0 * r * cc;
    return k;
}

DrivePattern DrivePattern::for_mode(CrosstalkMode mode, double v_dd) noexcept {
    switch (mode) {
    case CrosstalkMode::InPhase:
        return {v_dd, v_dd, v_dd};
    case CrosstalkMode::OutOfPhase:
        return {-v_dd, v_dd, -v_dd};
    case CrosstalkMode::Quiet:
        break;
    }
    return {0.0, v_dd, 0.0};
}

NodeVoltages transfer_eval(const LumpCoefficients& k, const DrivePattern& drive, std::complex<double> s,
                           double pole_tolerance) {
    using cd = std::complex<double>;
    if (std::abs(s) == 0.0)
        throw NumericError("transfer_eval: s = 0 is a pole of every step input");
    for (double b : {k.b1, k.b2, k.b3, k.b4, k.b5}) {
        if (std::abs(1.0 + b * s) < pole_tolerance)
            throw NumericError("transfer_eval: s is within tolerance of the pole -1/" + std::to_string(b));
    }

    const cd s2 = s * s;
    const cd u1 = drive.v_s1 / s;
    const cd u2 = drive.v_s2 / s;
    const cd u3 = drive.v_s3 / s;

    const cd den3 = (1.0 + k.b1 * s) * (1.0 + k.b2 * s) * (1.0 + k.b3 * s);
    const cd den2 = (1.0 + k.b4 * s) * (1.0 + k.b5 * s);

    NodeVoltages v;
    v.a = ((1.0 + k.a1 * s + k.a2 * s2) * u1 + (k.a3 * s + k.a4 * s2) * u2 + k.a5 * s2 * u3) / den3;
    v.b = (k.a6 * s * u1 + (1.0 + k.a7 * s) * u2 + k.a8 * s * u3) / den2;
    v.c = (k.a5 * s2 * u1 + (k.a3 * s + k.a4 * s2) * u2 + (1.0 + k.a1 * s + k.a2 * s2) * u3) / den3;
    return v;
}

namespace {

void require_time(double t) {
    if (!(t >= 0.0))
        throw ValidationError("response time must be >= 0, got " + std::to_string(t));
}

}  // namespace

double step_response_victim(CrosstalkMode mode, const LineRC& line, double t) {
    require_time(t);
    const double fast = std::exp(-t / line.tau());
    const double slow = std::exp(-t / (line.tau() + 3.0 * line.tau_coupling()));
    switch (mode) {
    case CrosstalkMode::InPhase:
        return (1.0 - fast) * line.v_dd;
    case CrosstalkMode::OutOfPhase:
        return (1.0 + 2.0 / 3.0 * fast - 2.0 / 3.0 * slow) * line.v_dd;
    case CrosstalkMode::Quiet:
        break;
    }
    return (1.0 - fast / 3.0 - 2.0 / 3.0 * slow) * line.v_dd;
}

double step_response_victim_exact(CrosstalkMode mode, const LineRC& line, double t) {
    if (mode != CrosstalkMode::OutOfPhase)
        return step_response_victim(mode, line, t);
    require_time(t);
    const double fast = std::exp(-t / line.tau());
    const double slow = std::exp(-t / (line.tau() + 3.0 * line.tau_coupling()));
    return (1.0 + fast / 3.0 - 4.0 / 3.0 * slow) * line.v_dd;
}

double threshold_delay(CrosstalkMode mode, const LineRC& line, double threshold_fraction, ResponseForm form) {
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
        throw ValidationError("threshold fraction must lie in (0, 1), got " + std::to_string(threshold_fraction));

    auto response = [&](double t) {
        const double v = form == ResponseForm::Exact ? step_response_victim_exact(mode, line, t)
                                                     : step_response_victim(mode, line, t);
        return v / line.v_dd - threshold_fraction;
    };

    if (response(0.0) >= 0.0)
        throw NumericError(std::string("threshold_delay: ") + std::string(to_string(mode)) +
                           " response starts at or above the threshold; no rising crossing");

    const double horizon = 100.0 * (line.tau() + 3.0 * line.tau_coupling());
    // Coarse scan so that a dip before the rise cannot hide the first crossing.
    constexpr int kScan = 4000;
    double lo = 0.0;
    double hi = -1.0;
    for (int i = 1; i <= kScan; ++i) {
        const double t = horizon * i / kScan;
        if (response(t) >= 0.0) {
            hi = t;
            break;
        }
        lo = t;
    }
    if (hi < 0.0)
        throw NumericError(std::string("threshold_delay: ") + std::string(to_string(mode)) +
                           " response never reaches the threshold within 100 time constants");

    while (hi - lo > 1e-6 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (response(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

double first_order_delay(CrosstalkMode mode, const LineRC& line, double threshold_fraction) {
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
        throw ValidationError("threshold fraction must lie in (0, 1), got " + std::to_string(threshold_fraction));
    const double rc = line.tau();
    const double rcc = line.tau_coupling();
    switch (mode) {
    case CrosstalkMode::InPhase:
        return threshold_fraction * rc;
    case CrosstalkMode::Quiet:
        if (rcc <= 0.0)
            throw NumericError("first_order_delay: quiet form needs Cc > 0");
        return threshold_fraction / (1.0 / (3.0 * rc) + 2.0 / (9.0 * rcc));
    case CrosstalkMode::OutOfPhase: {
        if (rcc <= 0.0)
            throw NumericError("first_order_delay: out-of-phase form needs Cc > 0");
        // The published form starts at the rail, so its linearization falls
        // towards the threshold from above.
        const double slope = 2.0 / (3.0 * rc) - 2.0 / (9.0 * rcc);
        if (slope <= 0.0)
            throw NumericError("first_order_delay: linearized out-of-phase response never reaches the "
                               "threshold (requires Cc > C/3)");
        return (1.0 - threshold_fraction) / slope;
    }
    }
    throw ValidationError("unknown crosstalk mode");
}

}  // namespace xtmon
