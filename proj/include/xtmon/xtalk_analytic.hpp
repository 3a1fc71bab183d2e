#pragma once

#include <complex>

#include "xtmon/capmodel.hpp"

namespace xtmon {

// Per-stage lumped parameters of three identical, laterally coupled lines.
// r and c are per line; c_c couples each adjacent pair.
struct LineRC {
    double r;
    double c;
    double c_c;
    double v_dd;

    // Throws ValidationError unless r > 0, c > 0, c_c >= 0, v_dd > 0.
    LineRC(double r, double c, double c_c, double v_dd);

    double tau() const noexcept { return r * c; }
    double tau_coupling() const noexcept { return r * c_c; }
};

// Numerator and denominator coefficients of the lumped three-line transfer
// functions. The a's carry s or s^2 units, the b's are time constants.
struct LumpCoefficients {
    double a1, a2, a3, a4, a5, a6, a7, a8;
    double b1, b2, b3, b4, b5;
};

LumpCoefficients lump_coefficients(const LineRC& line) noexcept;

// Step amplitudes applied at t = 0 to the left aggressor, victim and right
// aggressor sources.
struct DrivePattern {
    double v_s1;
    double v_s2;
    double v_s3;

    // Victim rises by v_dd; aggressors follow the mode (0, +v_dd, -v_dd).
    static DrivePattern for_mode(CrosstalkMode mode, double v_dd) noexcept;
};

struct NodeVoltages {
    std::complex<double> a;
    std::complex<double> b;
    std::complex<double> c;
};

// Laplace-domain node voltages for step drives (each source is amplitude/s).
// The coupling terms of the victim equation carry a factor s so that every
// term is dimensionless. Throws NumericError when s sits within
// `pole_tolerance` of a pole, measured as |1 + b_i s|, or at s = 0.
NodeVoltages transfer_eval(const LumpCoefficients& coeffs, const DrivePattern& drive,
                           std::complex<double> s, double pole_tolerance = 1e-9);

// Published closed-form victim step responses:
//   in-phase      (1 - e^{-t/RC}) V
//   out-of-phase  (1 + 2/3 e^{-t/RC} - 2/3 e^{-t/R(C+3Cc)}) V
//   quiet         (1 - 1/3 e^{-t/RC} - 2/3 e^{-t/R(C+3Cc)}) V
// The out-of-phase form starts at V rather than 0; it is kept verbatim.
double step_response_victim(CrosstalkMode mode, const LineRC& line, double t);

// Partial-fraction inverse of the lumped transfer function for the victim.
// Identical to the published forms for in-phase and quiet; the out-of-phase
// response is (1 + 1/3 e^{-t/RC} - 4/3 e^{-t/R(C+3Cc)}) V, which starts at 0
// and dips below zero when Cc > C.
double step_response_victim_exact(CrosstalkMode mode, const LineRC& line, double t);

enum class ResponseForm { Published, Exact };

// Smallest t >= 0 at which the victim reaches threshold_fraction * v_dd.
// Bracketing scan on [0, 100 * max time constant] followed by bisection to
// 1e-6 relative. Throws NumericError when there is no rising crossing in that
// window, which is always the case for the published out-of-phase form.
double threshold_delay(CrosstalkMode mode, const LineRC& line, double threshold_fraction = 0.5,
                       ResponseForm form = ResponseForm::Published);

// Half-rail crossing of the first-order Taylor expansion of the published
// responses, with R(C + 3Cc) replaced by 3 R Cc:
//   in-phase      RC / 2
//   quiet         (1/2) / (1/(3RC) + 2/(9RCc))
//   out-of-phase  (1/2) / (2/(3RC) - 2/(9RCc))
// Other thresholds f scale the numerators (f for in-phase and quiet, 1 - f
// for out-of-phase, whose linearization descends from the rail).
// Throws NumericError for quiet/out-of-phase with Cc = 0 and for
// out-of-phase when 2/(3RC) <= 2/(9RCc).
double first_order_delay(CrosstalkMode mode, const LineRC& line, double threshold_fraction = 0.5);

}  // namespace xtmon
