#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "xtmon/xtalk_analytic.hpp"

namespace xtmon {

// Linear RC network of three parallel lines in state-space form:
//   C dV/dt = B u - G V
// where u holds the three ideal source voltages and G already contains the
// source conductances on the driven diagonal entries.
struct NetworkStateSpace {
    int segments = 0;
    Eigen::SparseMatrix<double> capacitance;
    Eigen::SparseMatrix<double> conductance;
    Eigen::SparseMatrix<double> input;  // node x source, conductance from source into node
    std::array<int, 3> observed{};      // far-end node of lines A, B, C
    double min_time_constant = 0.0;
    double max_time_constant = 0.0;

    int node_count() const noexcept { return static_cast<int>(capacitance.rows()); }
    int node(int line, int segment) const noexcept { return line * segments + segment; }
};

// Three lines, each cut into `segments` equal R/segments, C/segments units
// with C_c/segments between neighbouring lines at matching nodes. Each line
// is driven at its near end through its first resistor. segments == 1 is the
// lumped three-node topology. Throws ValidationError for segments < 1.
NetworkStateSpace build_network(const LineRC& line, int segments);

struct Waveform {
    double dt = 0.0;
    std::vector<double> values;
    std::string label;

    double time(std::size_t i) const noexcept { return static_cast<double>(i) * dt; }
    double end_time() const noexcept { return values.empty() ? 0.0 : time(values.size() - 1); }
};

// min time constant / 50
double default_time_step(const NetworkStateSpace& net) noexcept;
// 30 x max time constant
double default_end_time(const NetworkStateSpace& net) noexcept;

// Fixed-step classical RK4 from a zero initial state with ideal step sources.
// Returns the far-end waveforms of lines A, B and C (labels "A", "B", "C").
// Requires dt <= min time constant / 20 and t_end >= dt (ValidationError).
// Throws NumericError if any node exceeds 10x the largest drive amplitude.
std::vector<Waveform> simulate_step(const NetworkStateSpace& net, const DrivePattern& drive, double dt,
                                    double t_end);

// First upward crossing of `threshold`, linearly interpolated between the
// bracketing samples. Throws NumericError if the waveform never crosses.
double crossing_time(const Waveform& w, double threshold);

// Integrates like simulate_step but only until the far end of the victim
// (line B) first reaches `threshold`, without storing the waveform. The
// crossing inside the final step comes from cubic Hermite interpolation on
// the node voltage and its derivative.
// dt <= 0 selects default_time_step. Throws NumericError if no crossing
// occurs within default_end_time.
double step_crossing_delay(const NetworkStateSpace& net, const DrivePattern& drive, double threshold,
                           double dt = 0.0);

// Victim delay for a crosstalk mode on a network built from `line`.
double oracle_delay(const LineRC& line, CrosstalkMode mode, int segments, double threshold_fraction = 0.5,
                    double dt = 0.0);

// Far-end node voltages in the Laplace domain for step sources (amplitude/s),
// solving (G + sC) V = B U directly.
std::array<std::complex<double>, 3> frequency_response(const NetworkStateSpace& net, const DrivePattern& drive,
                                                       std::complex<double> s);

struct ScalingPoint {
    double lump_delay;
    double distributed_delay;
    double ratio() const noexcept { return distributed_delay / lump_delay; }
};

// Victim delay of the `segments`-segment line divided by the one-segment
// lump delay, both from the oracle.
ScalingPoint distributed_delay_ratio(const LineRC& line, CrosstalkMode mode, int segments,
                                     double threshold_fraction = 0.5);

}  // namespace xtmon
