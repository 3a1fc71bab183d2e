#include "xtmon/transim.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "xtmon/errors.hpp"

namespace xtmon {

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

void stamp_between(Triplets& m, int i, int j, double value) {
    m.emplace_back(i, i, value);
    m.emplace_back(j, j, value);
    m.emplace_back(i, j, -value);
    m.emplace_back(j, i, -value);
}

// Time constants are the reciprocals of the generalized eigenvalues of
// G x = lambda C x (both symmetric, C positive definite).
void fill_time_constants(NetworkStateSpace& net) {
    const Eigen::MatrixXd g(net.conductance);
    const Eigen::MatrixXd c(net.capacitance);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(g, c, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericError("build_network: generalized eigenvalue solve failed");
    const auto& lambda = solver.eigenvalues();
    net.min_time_constant = 1.0 / lambda.maxCoeff();
    net.max_time_constant = 1.0 / lambda.minCoeff();
}

// dV/dt = f - A V with A = C^-1 G and f = C^-1 B u, precomputed once.
class StepIntegrator {
public:
    StepIntegrator(const NetworkStateSpace& net, const DrivePattern& drive) {
        const Eigen::MatrixXd c(net.capacitance);
        const Eigen::LLT<Eigen::MatrixXd> llt(c);
        if (llt.info() != Eigen::Success)
            throw NumericError("capacitance matrix is not positive definite");
        const Eigen::MatrixXd c_inv = llt.solve(Eigen::MatrixXd::Identity(c.rows(), c.cols()));
        // Block structure of C survives the inverse exactly; only true zeros are dropped.
        const Eigen::SparseMatrix<double> c_inv_sparse = c_inv.sparseView(0.0, 0.0);
        system_ = (c_inv_sparse * net.conductance).pruned();
        const Eigen::Vector3d u(drive.v_s1, drive.v_s2, drive.v_s3);
        forcing_ = c_inv_sparse * (net.input * u);

        const int n = net.node_count();
        state_ = Eigen::VectorXd::Zero(n);
        k1_.resize(n);
        k2_.resize(n);
        k3_.resize(n);
        k4_.resize(n);
        tmp_.resize(n);

        limit_ = 10.0 * std::max({std::abs(drive.v_s1), std::abs(drive.v_s2), std::abs(drive.v_s3)});
    }

    void step(double dt) {
        derivative(state_, k1_);
        tmp_ = state_ + 0.5 * dt * k1_;
        derivative(tmp_, k2_);
        tmp_ = state_ + 0.5 * dt * k2_;
        derivative(tmp_, k3_);
        tmp_ = state_ + dt * k3_;
        derivative(tmp_, k4_);
        state_ += (dt / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);

        if (limit_ > 0.0 && !(state_.cwiseAbs().maxCoeff() <= limit_))
            throw NumericError("simulate_step: state exceeded 10x the drive amplitude; time step too large");
    }

    double at(int node) const { return state_[node]; }

    // dV/dt of one node at the current state.
    double slope(int node) const { return forcing_[node] - system_.row(node).dot(state_); }

private:
    void derivative(const Eigen::VectorXd& v, Eigen::VectorXd& out) const {
        out = forcing_;
        out.noalias() -= system_ * v;
    }

    Eigen::SparseMatrix<double, Eigen::RowMajor> system_;
    Eigen::VectorXd forcing_;
    Eigen::VectorXd state_, k1_, k2_, k3_, k4_, tmp_;
    double limit_ = 0.0;
};

// Root of the cubic Hermite interpolant through (0, v0, d0) and (h, v1, d1)
// at level `target`, with v0 < target <= v1. Slopes are per unit time.
double hermite_crossing(double v0, double d0, double v1, double d1, double h, double target) {
    auto value = [&](double x) {
        const double x2 = x * x;
        const double x3 = x2 * x;
        return (2 * x3 - 3 * x2 + 1) * v0 + (x3 - 2 * x2 + x) * h * d0 + (-2 * x3 + 3 * x2) * v1 +
               (x3 - x2) * h * d1;
    };
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (value(mid) >= target ? hi : lo) = mid;
    }
    return hi * h;
}

void require_step(const NetworkStateSpace& net, double dt) {
    if (!(dt > 0.0) || dt > net.min_time_constant / 20.0 * (1.0 + 1e-12))
        throw ValidationError("time step must satisfy 0 < dt <= min time constant / 20 (" +
                              std::to_string(net.min_time_constant / 20.0) + " s), got " + std::to_string(dt));
}

}  // namespace

NetworkStateSpace build_network(const LineRC& line, int segments) {
    if (segments < 1)
        throw ValidationError("segment count must be >= 1, got " + std::to_string(segments));

    NetworkStateSpace net;
    net.segments = segments;
    const int n = 3 * segments;
    const double r = line.r / segments;
    const double c = line.c / segments;
    const double cc = line.c_c / segments;

    Triplets cap, cond, in;
    for (int l = 0; l < 3; ++l) {
        for (int k = 0; k < segments; ++k) {
            const int i = net.node(l, k);
            cap.emplace_back(i, i, c);
            if (k == 0) {
                cond.emplace_back(i, i, 1.0 / r);
                in.emplace_back(i, l, 1.0 / r);
            } else {
                stamp_between(cond, net.node(l, k - 1), i, 1.0 / r);
            }
        }
        net.observed[l] = net.node(l, segments - 1);
    }
    if (cc > 0.0) {
        for (int k = 0; k < segments; ++k) {
            stamp_between(cap, net.node(0, k), net.node(1, k), cc);
            stamp_between(cap, net.node(1, k), net.node(2, k), cc);
        }
    }

    net.capacitance.resize(n, n);
    net.capacitance.setFromTriplets(cap.begin(), cap.end());
    net.conductance.resize(n, n);
    net.conductance.setFromTriplets(cond.begin(), cond.end());
    net.input.resize(n, 3);
    net.input.setFromTriplets(in.begin(), in.end());

    fill_time_constants(net);
    return net;
}

double default_time_step(const NetworkStateSpace& net) noexcept { return net.min_time_constant / 50.0; }

double default_end_time(const NetworkStateSpace& net) noexcept { return 30.0 * net.max_time_constant; }

std::vector<Waveform> simulate_step(const NetworkStateSpace& net, const DrivePattern& drive, double dt,
                                    double t_end) {
    require_step(net, dt);
    if (!(t_end >= dt))
        throw ValidationError("t_end must be >= dt");

    const auto steps = static_cast<std::size_t>(std::llround(std::floor(t_end / dt)));
    std::vector<Waveform> out(3);
    const char* labels[] = {"A", "B", "C"};
    for (int l = 0; l < 3; ++l) {
        out[l].dt = dt;
        out[l].label = labels[l];
        out[l].values.reserve(steps + 1);
        out[l].values.push_back(0.0);
    }

    StepIntegrator integrator(net, drive);
    for (std::size_t i = 0; i < steps; ++i) {
        integrator.step(dt);
        for (int l = 0; l < 3; ++l)
            out[l].values.push_back(integrator.at(net.observed[l]));
    }
    return out;
}

double crossing_time(const Waveform& w, double threshold) {
    if (w.values.empty())
        throw NumericError("crossing_time: empty waveform");
    if (w.values.front() >= threshold)
        throw NumericError("crossing_time: waveform '" + w.label + "' starts at or above the threshold");
    for (std::size_t i = 1; i < w.values.size(); ++i) {
        const double v0 = w.values[i - 1];
        const double v1 = w.values[i];
        if (v1 >= threshold) {
            const double frac = (threshold - v0) / (v1 - v0);
            return w.time(i - 1) + frac * w.dt;
        }
    }
    throw NumericError("crossing_time: waveform '" + w.label + "' never reaches " + std::to_string(threshold));
}

double step_crossing_delay(const NetworkStateSpace& net, const DrivePattern& drive, double threshold, double dt) {
    if (dt <= 0.0)
        dt = default_time_step(net);
    require_step(net, dt);

    const int victim = net.observed[1];
    const double t_end = default_end_time(net);
    StepIntegrator integrator(net, drive);
    double previous = integrator.at(victim);
    double previous_slope = integrator.slope(victim);
    if (previous >= threshold)
        throw NumericError("step_crossing_delay: victim starts at or above the threshold");
    for (double t = 0.0; t < t_end; t += dt) {
        integrator.step(dt);
        const double current = integrator.at(victim);
        const double current_slope = integrator.slope(victim);
        if (current >= threshold)
            return t + hermite_crossing(previous, previous_slope, current, current_slope, dt, threshold);
        previous = current;
        previous_slope = current_slope;
    }
    throw NumericError("step_crossing_delay: victim never reached " + std::to_string(threshold) + " V");
}

double oracle_delay(const LineRC& line, CrosstalkMode mode, int segments, double threshold_fraction, double dt) {
    if (!(threshold_fraction > 0.0 && threshold_fraction < 1.0))
        throw ValidationError("threshold fraction must lie in (0, 1)");
    const NetworkStateSpace net = build_network(line, segments);
    return step_crossing_delay(net, DrivePattern::for_mode(mode, line.v_dd), threshold_fraction * line.v_dd, dt);
}

std::array<std::complex<double>, 3> frequency_response(const NetworkStateSpace& net, const DrivePattern& drive,
                                                       std::complex<double> s) {
    using cd = std::complex<double>;
    if (std::abs(s) == 0.0)
        throw NumericError("frequency_response: s = 0 is a pole of every step input");
    const Eigen::MatrixXcd system =
        Eigen::MatrixXd(net.conductance).cast<cd>() + s * Eigen::MatrixXd(net.capacitance).cast<cd>();
    const Eigen::Vector3cd u = Eigen::Vector3cd(drive.v_s1, drive.v_s2, drive.v_s3) / s;
    const Eigen::VectorXcd rhs = Eigen::MatrixXd(net.input).cast<cd>() * u;
    const Eigen::VectorXcd v = system.partialPivLu().solve(rhs);
    return {v[net.observed[0]], v[net.observed[1]], v[net.observed[2]]};
}

ScalingPoint distributed_delay_ratio(const LineRC& line, CrosstalkMode mode, int segments,
                                     double threshold_fraction) {
    return {oracle_delay(line, mode, 1, threshold_fraction),
            oracle_delay(line, mode, segments, threshold_fraction)};
}

}  // namespace xtmon
