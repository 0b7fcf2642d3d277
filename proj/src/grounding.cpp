#include "gspec/grounding.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace gspec {

int LeaderPartition::min_beta() const {
    return beta.empty() ? 0 : *std::min_element(beta.begin(), beta.end());
}

int LeaderPartition::max_beta() const {
    return beta.empty() ? 0 : *std::max_element(beta.begin(), beta.end());
}

LeaderPartition make_partition(const Graph& g, const std::vector<int>& S) {
    std::set<int> leader_set;
    for (int v : S) {
        if (v < 0 || v >= g.n) throw graph_error("leader index out of range: " + std::to_string(v));
        leader_set.insert(v);
    }
    if (leader_set.empty()) throw graph_error("leader set must be nonempty");
    if (static_cast<int>(leader_set.size()) == g.n)
        throw graph_error("leader set must leave at least one follower");

    LeaderPartition p;
    p.leaders.assign(leader_set.begin(), leader_set.end());
    p.follower_index.assign(g.n, -1);
    for (int v = 0; v < g.n; ++v) {
        if (!leader_set.count(v)) {
            p.follower_index[v] = static_cast<int>(p.followers.size());
            p.followers.push_back(v);
        }
    }
    p.beta.assign(p.followers.size(), 0);
    for (std::size_t i = 0; i < p.followers.size(); ++i) {
        for (int nb : g.adj[p.followers[i]])
            if (leader_set.count(nb)) ++p.beta[i];
    }
    p.boundary_size = 0;
    for (int b : p.beta) p.boundary_size += b;
    return p;
}

std::pair<LeaderPartition, GroundedSystem> ground(const Graph& g, const std::vector<int>& S) {
    if (!is_connected(g)) throw graph_error("ground: graph must be connected");
    LeaderPartition p = make_partition(g, S);

    const int nf = p.follower_count();
    const int nl = static_cast<int>(p.leaders.size());
    std::vector<int> leader_col(g.n, -1);
    for (int j = 0; j < nl; ++j) leader_col[p.leaders[j]] = j;

    GroundedSystem gs;
    gs.grounded_laplacian = Eigen::MatrixXd::Zero(nf, nf);
    gs.coupling = Eigen::MatrixXd::Zero(nf, nl);
    gs.follower_laplacian = Eigen::MatrixXd::Zero(nf, nf);
    gs.leader_count_diag.resize(nf);

    for (int i = 0; i < nf; ++i) {
        const int u = p.followers[i];
        gs.grounded_laplacian(i, i) = static_cast<double>(g.degrees[u]);
        gs.follower_laplacian(i, i) = static_cast<double>(g.degrees[u] - p.beta[i]);
        gs.leader_count_diag(i) = static_cast<double>(p.beta[i]);
        for (int nb : g.adj[u]) {
            if (int fj = p.follower_index[nb]; fj >= 0) {
                gs.grounded_laplacian(i, fj) = -1.0;
                gs.follower_laplacian(i, fj) = -1.0;
            } else {
                gs.coupling(i, leader_col[nb]) = -1.0;
            }
        }
    }
    return {std::move(p), std::move(gs)};
}

IncidenceData incidence_data(const Graph& g, const LeaderPartition& p) {
    const int m = g.edge_count();
    const int nf = p.follower_count();
    IncidenceData d;
    d.edge_count = m;
    d.incidence = Eigen::MatrixXd::Zero(g.n, m);
    for (int e = 0; e < m; ++e) {
        const auto& [u, v] = g.edges[e];   // u < v: tail = u, head = v
        d.incidence(u, e) = -1.0;
        d.incidence(v, e) = 1.0;
    }
    d.follower_rows = Eigen::MatrixXd::Zero(nf, m);
    for (int i = 0; i < nf; ++i) d.follower_rows.row(i) = d.incidence.row(p.followers[i]);
    d.edge_space = d.follower_rows.transpose() * d.follower_rows;
    return d;
}

} // namespace gspec
