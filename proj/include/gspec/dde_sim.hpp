#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "gspec/grounding.hpp"

namespace gspec {

enum class DisturbanceKind { none, constant, white_noise };

/// Fixed-step integration config. tau/dt must be an integer number of
/// steps; the follower history on [-tau, 0] is constant at the initial
/// state. White noise draws per-step increments with standard deviation
/// noise_std/sqrt(dt) so the discrete process approximates unit-intensity
/// continuous noise at noise_std = 1.
struct SimConfig {
    double dt = 0.0;
    double horizon = 0.0;
    double tau = 0.0;
    DisturbanceKind disturbance = DisturbanceKind::none;
    double noise_std = 0.0;
    Eigen::VectorXd constant_disturbance;   // used when disturbance == constant
    std::uint64_t noise_seed = 0;
    Eigen::VectorXd leader_states;          // x_S(0)
    Eigen::VectorXd initial_followers;      // x_F(0); empty = zeros
    int record_stride = 1;                  // keep every k-th sample (>= 1)
};

enum class SimClass { converged, diverged, inconclusive };

struct Trajectory {
    std::vector<double> time;
    Eigen::MatrixXd states;                 // recorded samples x followers
    Eigen::VectorXd equilibrium;
    double initial_error = 0.0;
    double terminal_error = 0.0;
    SimClass classification = SimClass::inconclusive;
    double first_overflow_time = 0.0;       // NaN unless overflow occurred
    bool horizon_extended = false;          // one automatic doubling happened
};

/// Fixed point of the nominal dynamics: solves L_g x* = -L_12 x_S(0).
/// Every component lies in [min x_S, max x_S].
Eigen::VectorXd equilibrium(const GroundedSystem& gs, const Eigen::VectorXd& x_S);

/// Integrates dx/dt = -L_g x(t - tau) - L_12 x_S(0) + w(t) with a classical
/// 4-stage step; the delayed state is read piecewise-constant from a ring
/// buffer at lag tau/dt. Classification: converged when the terminal window
/// (last 10% of the horizon) stays below 1e-6 x initial error; diverged on
/// 1e6 x initial error or non-finite state; otherwise the horizon is doubled
/// once and the run reported inconclusive if still undecided.
Trajectory simulate(const GroundedSystem& gs, const SimConfig& cfg);

struct BracketResult {
    double tau_lo = 0.0;      // stable
    double tau_hi = 0.0;      // unstable
    double midpoint = 0.0;
    double analytic = 0.0;    // pi / (2 lambda_max)
    int probes = 0;
    bool inconclusive = false;
};

/// Bisects the empirical stability boundary in tau between a known-stable
/// and known-unstable pair until tau_hi - tau_lo <= tol * midpoint.
BracketResult bracket_threshold(const GroundedSystem& gs, double tol);

/// Monte Carlo stationary output variance under white-noise disturbance
/// (tau = 0), to compare against noise_std^2 * trace(L_g^{-1}) / 2.
double disturbance_energy_check(const GroundedSystem& gs, int trials, double noise_std,
                                double horizon, std::uint64_t seed = 0);

} // namespace gspec
