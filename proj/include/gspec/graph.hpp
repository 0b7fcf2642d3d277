#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "gspec/errors.hpp"

namespace gspec {

/// Undirected simple graph. Edges are stored once as (u, v) with u < v,
/// sorted lexicographically; neighbor lists are sorted ascending.
/// Immutable after construction.
struct Graph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
    std::vector<std::vector<int>> adj;
    std::vector<int> degrees;

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool has_edge(int u, int v) const;

    /// Dense 0/1 adjacency matrix (integer entries).
    Eigen::MatrixXi adjacency_matrix() const;
    /// Dense Laplacian L = D - A, assembled from integer degrees/adjacency.
    Eigen::MatrixXd laplacian_matrix() const;
};

/// Builds a graph from an edge list. Duplicate edges are collapsed;
/// self-loops and out-of-range endpoints are rejected.
Graph build_graph(int n, std::span<const std::pair<int, int>> edge_list);
Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list);

bool is_connected(const Graph& g);

/// Connectivity of the subgraph induced by `vertices` (edges with both
/// endpoints inside). An empty set is rejected; a singleton is connected.
bool is_connected_subset(const Graph& g, const std::vector<int>& vertices);

/// Edges with exactly one endpoint in X. X must be a nonempty proper
/// subset of the vertex set.
std::vector<std::pair<int, int>> edge_boundary(const Graph& g, const std::vector<int>& X);

// Fixture builders used by tests and the leader-selection examples.
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph star_graph(int leaves);          // center = vertex 0
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b) ;

/// Broom tree B_{n,delta}: a star with `delta` leaves plus a path of
/// n - delta - 1 vertices attached to the star center. Vertex labels
/// (0-based): leaves 0..delta-1, center = delta, tail = delta+1..n-1.
Graph broom_tree(int n, int delta);

/// Two 2-leaf brooms joined through a middle vertex: 7 vertices, centers
/// at 2 and 4 (degree 3), middle at 3 (degree 2).
Graph broom_pair();

} // namespace gspec
