#include "gspec/bounds.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

namespace gspec {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// |dX| for X a subset of followers, using full-graph degrees:
// sum of degrees in X minus twice the edges inside X.
double boundary_ratio(const Graph& g, const std::vector<int>& members) {
    long degree_sum = 0;
    long internal = 0;
    std::vector<char> in_x(g.n, 0);
    for (int v : members) in_x[v] = 1;
    for (int v : members) {
        degree_sum += g.degrees[v];
        for (int nb : g.adj[v])
            if (in_x[nb]) ++internal;   // counts each internal edge twice
    }
    return static_cast<double>(degree_sum - internal) / static_cast<double>(members.size());
}

double isoperimetric_exact(const Graph& g, const LeaderPartition& p) {
    const int nf = p.follower_count();
    // Bitmask enumeration; masks index follower rows.
    std::vector<std::uint32_t> nbr_mask(nf, 0);
    for (int i = 0; i < nf; ++i)
        for (int v : g.adj[p.followers[i]])
            if (int fj = p.follower_index[v]; fj >= 0) nbr_mask[i] |= (1u << fj);

    double best = std::numeric_limits<double>::infinity();
    const std::uint32_t full = (1u << nf) - 1;   // nf <= 20 on this path
    for (std::uint32_t x = 1; x <= full; ++x) {
        long degree_sum = 0;
        long internal = 0;
        for (std::uint32_t rest = x; rest;) {
            const int i = std::countr_zero(rest);
            rest &= rest - 1;
            degree_sum += g.degrees[p.followers[i]];
            internal += std::popcount(nbr_mask[i] & x);
        }
        const double ratio =
            static_cast<double>(degree_sum - internal) / static_cast<double>(std::popcount(x));
        best = std::min(best, ratio);
    }
    return best;
}

double isoperimetric_sampled(const Graph& g, const LeaderPartition& p, int budget,
                             std::uint64_t seed) {
    const int nf = p.follower_count();
    double best = std::numeric_limits<double>::infinity();
    // all singletons, plus the full follower set so the bound chain stays ordered
    for (int i = 0; i < nf; ++i)
        best = std::min(best, static_cast<double>(g.degrees[p.followers[i]]));
    best = std::min(best, boundary_ratio(g, p.followers));

    std::uint64_t state = seed ^ 0xB0A4D1E5ULL;
    std::vector<int> members;
    for (int s = 0; s < budget; ++s) {
        const int size = 1 + static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(nf));
        members.clear();
        std::vector<char> chosen(nf, 0);
        while (static_cast<int>(members.size()) < size) {
            const int i = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(nf));
            if (!chosen[i]) {
                chosen[i] = 1;
                members.push_back(p.followers[i]);
            }
        }
        best = std::min(best, boundary_ratio(g, members));
    }
    return best;
}

} // namespace

Lambda1Bounds lambda1_bounds(const Graph& g, const LeaderPartition& p, const GroundedSystem& gs,
                             const SpectralSummary& s, int subset_budget, std::uint64_t seed,
                             const XminCertificate* precomputed_xmin) {
    Lambda1Bounds b;
    const int nf = p.follower_count();
    b.lower_beta_min = static_cast<double>(p.min_beta());
    b.upper_beta_max = static_cast<double>(p.max_beta());
    b.upper_boundary = static_cast<double>(p.boundary_size) / static_cast<double>(nf);
    b.lower_boundary = b.upper_boundary * s.x_min;
    if (nf <= 20) {
        b.upper_isoperimetric = isoperimetric_exact(g, p);
        b.isoperimetric_exact = true;
    } else {
        b.upper_isoperimetric = isoperimetric_sampled(g, p, subset_budget, seed);
        b.isoperimetric_exact = false;
    }
    const XminCertificate cert =
        precomputed_xmin ? *precomputed_xmin : xmin_certificate(g, p, gs);
    b.xmin_lower_bound = cert.value;
    b.xmin_bound_valid = cert.follower_subgraph_connected;
    return b;
}

XminCertificate xmin_certificate(const Graph& g, const LeaderPartition& p,
                                 const GroundedSystem& gs) {
    XminCertificate cert;
    cert.follower_subgraph_connected = is_connected_subset(g, p.followers);
    if (!cert.follower_subgraph_connected) {
        cert.value = -std::numeric_limits<double>::infinity();
        cert.vacuous = true;
        cert.follower_lambda2 = 0.0;
        return cert;
    }
    const int nf = p.follower_count();
    const Eigen::MatrixXd& lbar = gs.follower_laplacian;
    double lambda2;
    if (nf <= 1500) {
        lambda2 = eigendecompose(SymmetricMatrix(lbar)).eigenvalues(std::min(1, nf - 1));
    } else {
        // deflate the all-ones kernel with a rank-one shift, then take lambda_min
        const double shift = 2.0 * lbar.diagonal().maxCoeff() + 1.0;
        Eigen::MatrixXd deflated =
            lbar + (shift / nf) * Eigen::MatrixXd::Ones(nf, nf);
        lambda2 = smallest_eigenpair(SymmetricMatrix(std::move(deflated))).value;
    }
    cert.follower_lambda2 = lambda2;
    if (nf == 1) {
        // single follower: Perron vector is the scalar 1
        cert.value = 1.0;
        cert.vacuous = false;
        return cert;
    }
    const double s_count = static_cast<double>(p.leaders.size());
    cert.value = 1.0 - 2.0 * std::sqrt(s_count * p.boundary_size) / lambda2;
    cert.vacuous = cert.value <= 0.0;
    return cert;
}

int f_dominating_level(const Graph&, const LeaderPartition& p) { return p.min_beta(); }

LambdaMaxBounds lambda_max_bounds(const Graph& g, const LeaderPartition& p) {
    LambdaMaxBounds b;
    int dmax_f = 0;
    for (int v : p.followers) dmax_f = std::max(dmax_f, g.degrees[v]);
    b.lower_dmax = static_cast<double>(dmax_f);
    int pair_max = 0;
    bool any_ff_edge = false;
    for (const auto& [u, v] : g.edges) {
        if (p.follower_index[u] >= 0 && p.follower_index[v] >= 0) {
            any_ff_edge = true;
            pair_max = std::max(pair_max, g.degrees[u] + g.degrees[v]);
        }
    }
    b.followers_independent = !any_ff_edge;
    b.upper_M = static_cast<double>(std::max(dmax_f, pair_max));
    return b;
}

DesignedNetwork design_optimal_network(int n_followers, int n_leaders, int beta) {
    if (n_followers < 1) throw graph_error("design: need at least one follower");
    if (beta < 1) throw graph_error("design: beta must be >= 1");
    if (beta > n_leaders)
        throw graph_error("design: infeasible, needs at least beta leaders (beta=" +
                          std::to_string(beta) + ", leaders=" + std::to_string(n_leaders) + ")");
    std::vector<std::pair<int, int>> edges;
    const int first_leader = n_followers;
    for (int i = 0; i < n_followers; ++i)
        for (int j = 0; j < beta; ++j)
            edges.emplace_back(i, first_leader + (i * beta + j) % n_leaders);
    for (int j = 0; j + 1 < n_leaders; ++j)
        edges.emplace_back(first_leader + j, first_leader + j + 1);
    DesignedNetwork d;
    d.graph = build_graph(n_followers + n_leaders, edges);
    for (int j = 0; j < n_leaders; ++j) d.leaders.push_back(first_leader + j);
    return d;
}

EdgeRemovalEffect robustness_under_edge_removal(const Graph& g, const LeaderPartition& p,
                                                std::pair<int, int> edge) {
    if (!g.has_edge(edge.first, edge.second))
        throw graph_error("edge (" + std::to_string(edge.first) + "," +
                          std::to_string(edge.second) + ") not in graph");
    const bool first_follower = p.follower_index[edge.first] >= 0;
    const bool second_follower = p.follower_index[edge.second] >= 0;
    if (first_follower == second_follower)
        throw graph_error("edge does not cross the follower-leader cut");

    EdgeRemovalEffect eff;
    eff.beta_uniform_before = p.min_beta() == p.max_beta() && p.min_beta() > 0;
    auto [p0, gs0] = ground(g, p.leaders);
    eff.lambda1_before = smallest_eigenpair(SymmetricMatrix(gs0.grounded_laplacian)).value;

    std::vector<std::pair<int, int>> edges = g.edges;
    const auto key = std::make_pair(std::min(edge.first, edge.second),
                                    std::max(edge.first, edge.second));
    std::erase(edges, key);
    Graph reduced = build_graph(g.n, edges);
    if (!is_connected(reduced))
        throw graph_error("removing the edge disconnects the graph");
    auto [p1, gs1] = ground(reduced, p.leaders);
    eff.lambda1_after = smallest_eigenpair(SymmetricMatrix(gs1.grounded_laplacian)).value;
    eff.strictly_decreased =
        eff.lambda1_after < eff.lambda1_before - 1e-12 * std::max(1.0, eff.lambda1_before);
    return eff;
}

} // namespace gspec
