#pragma once

#include <cstdint>
#include <optional>

#include "gspec/bounds.hpp"
#include "gspec/graph.hpp"
#include "gspec/grounding.hpp"
#include "gspec/numerics.hpp"

namespace gspec {

/// Closed-form robustness metrics plus their graph-theoretic companions.
/// hinf_upper_beta is absent when min beta = 0 (the bound degenerates to
/// +infinity); serialization writes null plus an "unbounded" flag.
struct RobustnessReport {
    double h2_disorder = 0.0;          // 0.5 * trace(L_g^{-1})
    double h2_norm = 0.0;              // sqrt of the disorder, reported separately
    double hinf_disorder = 0.0;        // 1 / lambda_1(L_g)
    double delay_threshold = 0.0;      // pi / (2 lambda_max(L_g))

    // chain 1/max beta <= (n-|S|)/|dS| <= 1/lambda_1 <= 1/min beta
    double hinf_lower_beta = 0.0;
    double hinf_lower_boundary = 0.0;
    std::optional<double> hinf_upper_beta;

    double delay_necessary = 0.0;      // pi / (2 d_max^F)
    double delay_sufficient = 0.0;     // pi / (2 M)
};

double h2_disorder(const GroundedSystem& gs);
double hinf_disorder(const SpectralSummary& s);
double delay_threshold(const SpectralSummary& s);

struct HinfConditions {
    bool necessary_met = false;        // 1/max beta <= gamma
    bool sufficient_met = false;       // min beta > 0 and 1/min beta <= gamma
};

HinfConditions hinf_condition_check(const Graph& g, const LeaderPartition& p, double gamma);

struct DelayConditions {
    bool necessary_met = false;        // tau < pi/(2 d_max^F)
    bool sufficient_met = false;       // tau < pi/(2 M)
    bool exact_met = false;            // tau < pi/(2 lambda_max)
};

DelayConditions delay_condition_check(const Graph& g, const LeaderPartition& p, double tau);

RobustnessReport robustness_report(const Graph& g, const LeaderPartition& p,
                                   const GroundedSystem& gs, const SpectralSummary& s);

/// Everything the analyze front end surfaces for one (graph, leader set):
/// exact spectral values, both bound families, the robustness metrics and
/// the certificate flags.
struct AnalysisReport {
    int n = 0;
    int leader_count = 0;
    int follower_count = 0;
    int boundary_size = 0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    double x_min = 0.0;
    Lambda1Bounds lambda1_bounds;
    LambdaMaxBounds lambda_max_bounds;
    XminCertificate xmin_certificate;
    int f_dominating_level = 0;
    bool beta_uniform = false;         // all beta_i equal (and > 0): lambda_1 = beta exactly
    RobustnessReport robustness;
};

AnalysisReport analyze(const Graph& g, const std::vector<int>& leaders,
                       int subset_budget = 2000, std::uint64_t seed = 0);

} // namespace gspec
