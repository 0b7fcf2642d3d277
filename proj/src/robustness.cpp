#include "gspec/robustness.hpp"

#include <cmath>
#include <numbers>

namespace gspec {

double h2_disorder(const GroundedSystem& gs) {
    return 0.5 * cholesky_trace_inverse(SymmetricMatrix(gs.grounded_laplacian));
}

double hinf_disorder(const SpectralSummary& s) {
    if (s.lambda_min <= 0) throw numerical_error("hinf_disorder: lambda_1 must be positive");
    return 1.0 / s.lambda_min;
}

double delay_threshold(const SpectralSummary& s) {
    if (s.lambda_max <= 0) throw numerical_error("delay_threshold: lambda_max must be positive");
    return std::numbers::pi / (2.0 * s.lambda_max);
}

HinfConditions hinf_condition_check(const Graph&, const LeaderPartition& p, double gamma) {
    if (gamma <= 0) throw graph_error("hinf_condition_check: gamma must be positive");
    HinfConditions c;
    const int bmax = p.max_beta();
    const int bmin = p.min_beta();
    c.necessary_met = bmax > 0 && 1.0 / bmax <= gamma;
    c.sufficient_met = bmin > 0 && 1.0 / bmin <= gamma;
    return c;
}

DelayConditions delay_condition_check(const Graph& g, const LeaderPartition& p, double tau) {
    if (tau <= 0) throw graph_error("delay_condition_check: tau must be positive");
    DelayConditions c;
    const LambdaMaxBounds lb = lambda_max_bounds(g, p);
    const double pi = std::numbers::pi;
    c.necessary_met = tau < pi / (2.0 * lb.lower_dmax);
    c.sufficient_met = tau < pi / (2.0 * lb.upper_M);
    auto [part, gs] = ground(g, p.leaders);
    const double lmax = largest_eigenvalue(SymmetricMatrix(gs.grounded_laplacian));
    c.exact_met = tau < pi / (2.0 * lmax);
    return c;
}

RobustnessReport robustness_report(const Graph& g, const LeaderPartition& p,
                                   const GroundedSystem& gs, const SpectralSummary& s) {
    RobustnessReport r;
    r.h2_disorder = h2_disorder(gs);
    r.h2_norm = std::sqrt(r.h2_disorder);
    r.hinf_disorder = hinf_disorder(s);
    r.delay_threshold = delay_threshold(s);

    const int bmax = p.max_beta();
    const int bmin = p.min_beta();
    r.hinf_lower_beta = bmax > 0 ? 1.0 / bmax : 0.0;
    r.hinf_lower_boundary =
        static_cast<double>(p.follower_count()) / static_cast<double>(p.boundary_size);
    if (bmin > 0) r.hinf_upper_beta = 1.0 / bmin;

    const LambdaMaxBounds lb = lambda_max_bounds(g, p);
    const double pi = std::numbers::pi;
    r.delay_necessary = pi / (2.0 * lb.lower_dmax);
    r.delay_sufficient = pi / (2.0 * lb.upper_M);
    return r;
}

AnalysisReport analyze(const Graph& g, const std::vector<int>& leaders, int subset_budget,
                       std::uint64_t seed) {
    auto [p, gs] = ground(g, leaders);
    SpectralSummary s = spectral_summary(SymmetricMatrix(gs.grounded_laplacian));

    AnalysisReport rep;
    rep.n = g.n;
    rep.leader_count = static_cast<int>(p.leaders.size());
    rep.follower_count = p.follower_count();
    rep.boundary_size = p.boundary_size;
    rep.lambda_min = s.lambda_min;
    rep.lambda_max = s.lambda_max;
    rep.x_min = s.x_min;
    rep.xmin_certificate = xmin_certificate(g, p, gs);
    rep.lambda1_bounds = lambda1_bounds(g, p, gs, s, subset_budget, seed, &rep.xmin_certificate);
    rep.lambda_max_bounds = lambda_max_bounds(g, p);
    rep.f_dominating_level = f_dominating_level(g, p);
    rep.beta_uniform = p.min_beta() == p.max_beta() && p.min_beta() > 0;
    rep.robustness = robustness_report(g, p, gs, s);
    return rep;
}

} // namespace gspec
