#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "gspec/graph.hpp"

namespace gspec {

/// Resistance distances r_ij (unit resistors on edges) and per-vertex
/// effective resistances R_i = sum_j r_ij = trace of the inverse grounded
/// Laplacian induced by i.
struct ResistanceData {
    Eigen::MatrixXd pairwise;   // symmetric, zero diagonal
    Eigen::VectorXd effective;
};

/// Computed from a single grounding at `reference` (one factorization):
/// r_ij = (e_i - e_j)^T L_gk^{-1} (e_i - e_j) for i, j != k and
/// r_ik = (L_gk^{-1})_ii. Requires a connected graph.
ResistanceData resistance_data(const Graph& g, int reference = 0);

struct LeaderScore {
    int vertex = 0;
    double grounding_centrality = 0.0;  // lambda_1 of the grounded Laplacian at vertex
    double h2_cost = 0.0;               // 0.5 * trace(L_gv^{-1})
    double delay_threshold = 0.0;       // pi / (2 lambda_max(L_gv))
};

/// Per-vertex single-leader metrics with deterministic argbest selection
/// (ties at 1e-9 absolute resolved toward the lowest vertex index).
struct LeaderRanking {
    std::vector<LeaderScore> scores;    // indexed by vertex
    int best_h2 = 0;                    // minimizes h2_cost
    int best_hinf = 0;                  // maximizes grounding_centrality
    int best_delay = 0;                 // maximizes delay_threshold
};

/// Evaluates every vertex as the single leader. Cost is one factorization
/// of size n-1 per vertex; refuse inputs above `cap` vertices.
LeaderRanking exhaustive_ranking(const Graph& g, int cap = 1500);

/// Degree-dominance sufficient condition: vertex k maximizes the delay
/// threshold if d_k >= 2 d_i for every other vertex.
bool delay_dominance_certificate(const Graph& g, int k);

/// Sufficient condition for k to be the best leader for H2, Hinf (and
/// convergence rate) and delay threshold simultaneously:
/// d_k >= 2 d_i / x_min^2 for all i != k, with x_min taken from the Perron
/// vector of the grounded Laplacian at k.
struct SimultaneousCertificate {
    bool holds = false;
    double xmin = 0.0;
    double margin = 0.0;    // d_k - max_i 2 d_i / x_min^2  (>= 0 iff holds)
    std::string reason;     // set when the certificate cannot be evaluated
};

SimultaneousCertificate simultaneous_certificate(const Graph& g, int k);

/// Residual |trace(L_gi^{-1}) - (trace(L_gk^{-1}) + n r_ik - 2 S_i^k)|,
/// where S_i^k is the i-th row sum of L_gk^{-1}.
double resistance_trace_identity_check(const Graph& g, int i, int k);

} // namespace gspec
