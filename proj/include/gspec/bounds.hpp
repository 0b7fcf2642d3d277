#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gspec/graph.hpp"
#include "gspec/grounding.hpp"
#include "gspec/numerics.hpp"

namespace gspec {

/// Certified interval data around lambda_1(L_g):
///   max(lower_beta_min, lower_boundary) <= lambda_1
///     <= upper_isoperimetric <= upper_boundary <= upper_beta_max.
/// upper_isoperimetric is min{|dX|/|X|} over follower subsets; it is exact
/// when the follower count allows enumeration, otherwise a subfamily
/// minimum (still a valid upper bound).
struct Lambda1Bounds {
    double lower_beta_min = 0.0;
    double lower_boundary = 0.0;       // (|dS|/(n-|S|)) * x_min
    double upper_isoperimetric = 0.0;
    double upper_boundary = 0.0;       // |dS|/(n-|S|)
    double upper_beta_max = 0.0;
    bool isoperimetric_exact = false;
    double xmin_lower_bound = 0.0;     // 1 - 2*sqrt(|S||dS|)/lambda_2(Lbar)
    bool xmin_bound_valid = false;     // false when follower subgraph is disconnected
};

/// Lower bound on x_min from the follower algebraic connectivity. The value
/// can be <= 0 (vacuous certificate); a disconnected follower subgraph yields
/// -inf with connected=false.
struct XminCertificate {
    double value = 0.0;
    bool follower_subgraph_connected = false;
    bool vacuous = true;               // value <= 0
    double follower_lambda2 = 0.0;
};

XminCertificate xmin_certificate(const Graph& g, const LeaderPartition& p,
                                 const GroundedSystem& gs);

/// `precomputed_xmin` skips the follower-Laplacian eigensolve when the
/// caller already holds the certificate.
Lambda1Bounds lambda1_bounds(const Graph& g, const LeaderPartition& p,
                             const GroundedSystem& gs, const SpectralSummary& s,
                             int subset_budget = 2000, std::uint64_t seed = 0,
                             const XminCertificate* precomputed_xmin = nullptr);

/// Largest f such that every follower has at least f leader neighbors.
int f_dominating_level(const Graph& g, const LeaderPartition& p);

/// d_max^F <= lambda_max(L_g) <= M, with
/// M = max{d_max^F, max over follower-follower edges of d_u + d_v}
/// (degrees taken in the full graph). When the followers form an
/// independent set the two sides coincide.
struct LambdaMaxBounds {
    double lower_dmax = 0.0;
    double upper_M = 0.0;
    bool followers_independent = false;
};

LambdaMaxBounds lambda_max_bounds(const Graph& g, const LeaderPartition& p);

/// Network with lambda_1(L_g) = lambda_max(L_g) = beta: every follower is
/// wired to exactly beta leaders (round-robin), followers independent,
/// leaders chained in a path for global connectivity. Vertices 0..n_f-1 are
/// followers, n_f..n_f+n_l-1 leaders.
struct DesignedNetwork {
    Graph graph;
    std::vector<int> leaders;
};

DesignedNetwork design_optimal_network(int n_followers, int n_leaders, int beta);

struct EdgeRemovalEffect {
    double lambda1_before = 0.0;
    double lambda1_after = 0.0;
    bool strictly_decreased = false;
    bool beta_uniform_before = false;  // hypothesis under which strictness is guaranteed
};

/// Recomputes lambda_1 after deleting a follower-leader edge. Throws if the
/// edge is missing, does not cross F-S, or its removal disconnects the graph.
EdgeRemovalEffect robustness_under_edge_removal(const Graph& g, const LeaderPartition& p,
                                                std::pair<int, int> edge);

} // namespace gspec
