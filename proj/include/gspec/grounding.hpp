#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "gspec/graph.hpp"

namespace gspec {

/// Split of the vertex set into leaders S and followers F = V \ S.
/// Followers keep ascending original-index order; beta[i] counts the
/// leader neighbors of follower i.
struct LeaderPartition {
    std::vector<int> leaders;            // sorted ascending
    std::vector<int> followers;          // sorted ascending
    std::vector<int> beta;               // per follower, sum == boundary_size
    int boundary_size = 0;               // |dS|
    std::vector<int> follower_index;     // vertex -> follower row, -1 for leaders

    int follower_count() const { return static_cast<int>(followers.size()); }
    int min_beta() const;
    int max_beta() const;
};

/// Matrices induced by a leader partition:
///   grounded_laplacian  L_g  (rows/cols of L restricted to followers)
///   coupling            L_12 (follower-to-leader block of L, entries <= 0)
///   follower_laplacian  Lbar (Laplacian of the follower-induced subgraph)
///   leader_count_diag   diag(E) with E_ii = beta_i, so L_g = Lbar + E.
struct GroundedSystem {
    Eigen::MatrixXd grounded_laplacian;
    Eigen::MatrixXd coupling;
    Eigen::MatrixXd follower_laplacian;
    Eigen::VectorXd leader_count_diag;

    int dim() const { return static_cast<int>(grounded_laplacian.rows()); }
};

/// Grounds the graph at S. Requires g connected and S a nonempty proper
/// subset of the vertices.
std::pair<LeaderPartition, GroundedSystem> ground(const Graph& g, const std::vector<int>& S);

LeaderPartition make_partition(const Graph& g, const std::vector<int>& S);

/// Oriented incidence matrix and its follower block. Orientation is fixed:
/// the smaller-index endpoint of each edge is the tail (-1), the larger the
/// head (+1); columns follow the graph's sorted edge order.
struct IncidenceData {
    Eigen::MatrixXd incidence;      // n x m, B B^T = L
    Eigen::MatrixXd follower_rows;  // (n-|S|) x m, B_F B_F^T = L_g
    Eigen::MatrixXd edge_space;     // m x m, N = B_F^T B_F
    int edge_count = 0;
};

IncidenceData incidence_data(const Graph& g, const LeaderPartition& p);

} // namespace gspec
