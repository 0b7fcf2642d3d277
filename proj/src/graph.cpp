#include "gspec/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace gspec {

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v) return false;
    const auto& nb = adj[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

Eigen::MatrixXi Graph::adjacency_matrix() const {
    Eigen::MatrixXi a = Eigen::MatrixXi::Zero(n, n);
    for (const auto& [u, v] : edges) {
        a(u, v) = 1;
        a(v, u) = 1;
    }
    return a;
}

Eigen::MatrixXd Graph::laplacian_matrix() const {
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) l(i, i) = static_cast<double>(degrees[i]);
    for (const auto& [u, v] : edges) {
        l(u, v) = -1.0;
        l(v, u) = -1.0;
    }
    return l;
}

Graph build_graph(int n, std::span<const std::pair<int, int>> edge_list) {
    if (n < 0) throw graph_error("vertex count must be nonnegative");
    std::set<std::pair<int, int>> dedup;
    for (const auto& [a, b] : edge_list) {
        if (a == b)
            throw graph_error("self-loop at vertex " + std::to_string(a));
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw graph_error("edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") out of range for n=" + std::to_string(n));
        dedup.emplace(std::min(a, b), std::max(a, b));
    }
    Graph g;
    g.n = n;
    g.edges.assign(dedup.begin(), dedup.end());
    g.adj.assign(n, {});
    for (const auto& [u, v] : g.edges) {
        g.adj[u].push_back(v);
        g.adj[v].push_back(u);
    }
    for (auto& nb : g.adj) std::sort(nb.begin(), nb.end());
    g.degrees.resize(n);
    for (int i = 0; i < n; ++i) g.degrees[i] = static_cast<int>(g.adj[i].size());
    return g;
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
    return build_graph(n, std::span<const std::pair<int, int>>(edge_list));
}

namespace {

// Iterative DFS over an implicit vertex subset; `allowed` empty means all.
int reachable_count(const Graph& g, int start, const std::vector<char>& allowed) {
    std::vector<char> seen(g.n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    int count = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int v : g.adj[u]) {
            if (!seen[v] && (allowed.empty() || allowed[v])) {
                seen[v] = 1;
                ++count;
                stack.push_back(v);
            }
        }
    }
    return count;
}

} // namespace

bool is_connected(const Graph& g) {
    if (g.n == 0) return false;
    if (g.n == 1) return true;
    return reachable_count(g, 0, {}) == g.n;
}

bool is_connected_subset(const Graph& g, const std::vector<int>& vertices) {
    if (vertices.empty()) throw graph_error("empty vertex subset");
    std::vector<char> allowed(g.n, 0);
    for (int v : vertices) {
        if (v < 0 || v >= g.n) throw graph_error("vertex out of range");
        allowed[v] = 1;
    }
    return reachable_count(g, vertices.front(), allowed) == static_cast<int>(vertices.size());
}

std::vector<std::pair<int, int>> edge_boundary(const Graph& g, const std::vector<int>& X) {
    if (X.empty()) throw graph_error("edge_boundary: X must be nonempty");
    std::vector<char> in_x(g.n, 0);
    int distinct = 0;
    for (int v : X) {
        if (v < 0 || v >= g.n) throw graph_error("edge_boundary: vertex out of range");
        if (!in_x[v]) ++distinct;
        in_x[v] = 1;
    }
    if (distinct == g.n) throw graph_error("edge_boundary: X must be a proper subset");
    std::vector<std::pair<int, int>> boundary;
    for (const auto& [u, v] : g.edges)
        if (in_x[u] != in_x[v]) boundary.emplace_back(u, v);
    return boundary;
}

Graph path_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return build_graph(n, e);
}

Graph cycle_graph(int n) {
    if (n < 3) throw graph_error("cycle needs at least 3 vertices");
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return build_graph(n, e);
}

Graph star_graph(int leaves) {
    std::vector<std::pair<int, int>> e;
    for (int i = 1; i <= leaves; ++i) e.emplace_back(0, i);
    return build_graph(leaves + 1, e);
}

Graph complete_graph(int n) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return build_graph(n, e);
}

Graph complete_bipartite(int a, int b) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
    return build_graph(a + b, e);
}

Graph broom_tree(int n, int delta) {
    if (delta < 1 || n < delta + 1) throw graph_error("broom_tree: need n >= delta + 1");
    std::vector<std::pair<int, int>> e;
    const int center = delta;
    for (int leaf = 0; leaf < delta; ++leaf) e.emplace_back(leaf, center);
    for (int t = center; t + 1 < n; ++t) e.emplace_back(t, t + 1);
    return build_graph(n, e);
}

Graph broom_pair() {
    return build_graph(7, std::vector<std::pair<int, int>>{
                              {0, 2}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {4, 6}});
}

} // namespace gspec
