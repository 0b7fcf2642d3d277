#include <doctest.h>

#include <cmath>
#include <limits>

#include "gspec/bounds.hpp"
#include "gspec/graph.hpp"
#include "gspec/grounding.hpp"
#include "gspec/numerics.hpp"
#include "test_support.hpp"

using namespace gspec;

namespace {

struct GroundedCase {
    Graph g;
    LeaderPartition p;
    GroundedSystem gs;
    SpectralSummary s;
};

GroundedCase make_case(Graph g, const std::vector<int>& leaders) {
    auto [p, gs] = ground(g, leaders);
    SpectralSummary s = spectral_summary(SymmetricMatrix(gs.grounded_laplacian));
    return {std::move(g), std::move(p), std::move(gs), std::move(s)};
}

} // namespace

TEST_CASE("lambda1 bounds on the small fixtures") {
    GroundedCase mid = make_case(path_graph(3), {1});
    Lambda1Bounds b = lambda1_bounds(mid.g, mid.p, mid.gs, mid.s);
    CHECK(b.lower_beta_min == 1.0);
    CHECK(b.upper_beta_max == 1.0);
    CHECK(mid.s.lambda_min == doctest::Approx(1.0));

    GroundedCase star = make_case(star_graph(6), {0});
    Lambda1Bounds bs = lambda1_bounds(star.g, star.p, star.gs, star.s);
    CHECK(bs.lower_beta_min == 1.0);
    CHECK(star.s.lambda_min == doctest::Approx(1.0));

    GroundedCase end = make_case(path_graph(3), {0});
    Lambda1Bounds be = lambda1_bounds(end.g, end.p, end.gs, end.s);
    CHECK(be.lower_beta_min == 0.0);
    CHECK(be.isoperimetric_exact);
    CHECK(be.upper_isoperimetric == doctest::Approx(0.5));   // X = {1,2}
    CHECK(end.s.lambda_min == doctest::Approx((3 - std::sqrt(5.0)) / 2));
    CHECK(end.s.lambda_min <= be.upper_isoperimetric + 1e-9);
}

TEST_CASE("xmin certificate") {
    GroundedCase k4 = make_case(complete_graph(4), {3});
    XminCertificate cert = xmin_certificate(k4.g, k4.p, k4.gs);
    CHECK(cert.follower_subgraph_connected);
    CHECK(cert.follower_lambda2 == doctest::Approx(3.0));
    CHECK(cert.value == doctest::Approx(1.0 - 2.0 * std::sqrt(3.0) / 3.0).epsilon(1e-10));
    CHECK(cert.vacuous);

    // large follower connectivity pushes the bound toward 1
    GroundedCase kn = make_case(complete_graph(40), {0});
    XminCertificate tight = xmin_certificate(kn.g, kn.p, kn.gs);
    CHECK(tight.follower_lambda2 == doctest::Approx(39.0));
    CHECK(tight.value > 0.65);
    CHECK_FALSE(tight.vacuous);

    // disconnected follower subgraph
    GroundedCase split = make_case(path_graph(3), {1});
    XminCertificate vac = xmin_certificate(split.g, split.p, split.gs);
    CHECK_FALSE(vac.follower_subgraph_connected);
    CHECK(vac.value == -std::numeric_limits<double>::infinity());
    CHECK(vac.vacuous);
}

TEST_CASE("f-dominating level") {
    GroundedCase star = make_case(star_graph(5), {0});
    CHECK(f_dominating_level(star.g, star.p) == 1);
    GroundedCase end = make_case(path_graph(3), {0});
    CHECK(f_dominating_level(end.g, end.p) == 0);

    testing::Corpus corpus(3);
    std::vector<int> leaders;
    Graph two = corpus.beta_uniform_graph(5, 4, 2, 0.3, leaders);
    auto [p, gs] = ground(two, leaders);
    CHECK(f_dominating_level(two, p) == 2);
    CHECK(smallest_eigenpair(SymmetricMatrix(gs.grounded_laplacian)).value ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("lambda_max bounds") {
    // bipartite with leaders on one side: followers independent, bound tight
    GroundedCase kb = make_case(complete_bipartite(2, 3), {0, 1});
    LambdaMaxBounds b = lambda_max_bounds(kb.g, kb.p);
    CHECK(b.followers_independent);
    CHECK(b.lower_dmax == 2.0);
    CHECK(b.upper_M == 2.0);
    CHECK(kb.s.lambda_max == doctest::Approx(2.0));

    GroundedCase mid = make_case(path_graph(3), {1});
    LambdaMaxBounds bm = lambda_max_bounds(mid.g, mid.p);
    CHECK(bm.followers_independent);
    CHECK(mid.s.lambda_max == doctest::Approx(1.0));

    GroundedCase p4 = make_case(path_graph(4), {0});
    LambdaMaxBounds bp = lambda_max_bounds(p4.g, p4.p);
    CHECK(bp.lower_dmax == 2.0);
    CHECK(bp.upper_M == 4.0);
    CHECK(p4.s.lambda_max == doctest::Approx(3.2469796037).epsilon(1e-8));
    CHECK(bp.lower_dmax <= p4.s.lambda_max);
    CHECK(p4.s.lambda_max <= bp.upper_M);
}

TEST_CASE("design_optimal_network") {
    DesignedNetwork d = design_optimal_network(4, 2, 2);
    auto [p, gs] = ground(d.graph, d.leaders);
    CHECK(gs.grounded_laplacian.isApprox(2.0 * Eigen::MatrixXd::Identity(4, 4)));

    DesignedNetwork star = design_optimal_network(5, 1, 1);
    auto [ps, gss] = ground(star.graph, star.leaders);
    CHECK(gss.grounded_laplacian.isApprox(Eigen::MatrixXd::Identity(5, 5)));

    DesignedNetwork wide = design_optimal_network(3, 5, 2);
    auto [pw, gsw] = ground(wide.graph, wide.leaders);
    SpectralSummary s = spectral_summary(SymmetricMatrix(gsw.grounded_laplacian));
    CHECK(s.lambda_min == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s.lambda_max == doctest::Approx(2.0).epsilon(1e-12));

    CHECK_THROWS_AS(design_optimal_network(3, 2, 3), graph_error);
}

TEST_CASE("edge removal under the uniform-beta hypothesis") {
    testing::Corpus corpus(9);
    std::vector<int> leaders;
    Graph g = corpus.beta_uniform_graph(2, 2, 2, 0.0, leaders);
    auto p = make_partition(g, leaders);
    // remove one follower-leader edge
    EdgeRemovalEffect eff = robustness_under_edge_removal(g, p, {0, leaders[0]});
    CHECK(eff.beta_uniform_before);
    CHECK(eff.lambda1_before == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(eff.lambda1_after < 2.0);
    CHECK(eff.strictly_decreased);

    // leaf edge removal disconnects the star
    Graph star = star_graph(4);
    auto pstar = make_partition(star, {0});
    CHECK_THROWS_AS(robustness_under_edge_removal(star, pstar, {0, 1}), graph_error);

    // non-uniform case still reports values
    Graph tri_tail = build_graph(4, std::vector<std::pair<int, int>>{{0, 1}, {0, 2}, {1, 2}, {2, 3}});
    auto pt = make_partition(tri_tail, {0});
    EdgeRemovalEffect e2 = robustness_under_edge_removal(tri_tail, pt, {0, 1});
    CHECK_FALSE(e2.beta_uniform_before);
    CHECK(e2.lambda1_before > 0.0);
    CHECK(e2.lambda1_after > 0.0);

    // rejects edges that do not cross the cut, absent edges, and removals
    // that disconnect the graph
    Graph p4 = path_graph(4);
    auto pp = make_partition(p4, {0});
    CHECK_THROWS_AS(robustness_under_edge_removal(p4, pp, {1, 2}), graph_error);
    CHECK_THROWS_AS(robustness_under_edge_removal(p4, pp, {0, 3}), graph_error);
    CHECK_THROWS_AS(robustness_under_edge_removal(p4, pp, {0, 1}), graph_error);
}

TEST_CASE("bound sandwich on a randomized corpus") {
    testing::Corpus corpus(77);
    for (int trial = 0; trial < 40; ++trial) {
        Graph g = corpus.connected_graph(3, 15);
        auto leaders = corpus.random_leader_set(g.n);
        auto [p, gs] = ground(g, leaders);
        SpectralSummary s = spectral_summary(SymmetricMatrix(gs.grounded_laplacian));
        const double lambda1 = eigendecompose(SymmetricMatrix(gs.grounded_laplacian)).eigenvalues(0);

        Lambda1Bounds b = lambda1_bounds(g, p, gs, s);
        const double lower = std::max(b.lower_beta_min, b.lower_boundary);
        CHECK(lower <= lambda1 + 1e-9);
        CHECK(lambda1 <= b.upper_isoperimetric + 1e-9);
        CHECK(b.upper_isoperimetric <= b.upper_boundary + 1e-9);
        CHECK(b.upper_boundary <= b.upper_beta_max + 1e-9);
        if (b.xmin_bound_valid) CHECK(b.xmin_lower_bound <= s.x_min + 1e-9);

        LambdaMaxBounds bm = lambda_max_bounds(g, p);
        CHECK(bm.lower_dmax <= s.lambda_max + 1e-9);
        CHECK(s.lambda_max <= bm.upper_M + 1e-9);
    }
}

TEST_CASE("exactness families") {
    testing::Corpus corpus(123);
    for (int trial = 0; trial < 12; ++trial) {
        const int nf = corpus.range(2, 8);
        const int nl = corpus.range(2, 5);
        const int beta = corpus.range(1, nl);
        std::vector<int> leaders;
        Graph g = corpus.beta_uniform_graph(nf, nl, beta, 0.4, leaders);
        auto [p, gs] = ground(g, leaders);
        CHECK(smallest_eigenpair(SymmetricMatrix(gs.grounded_laplacian)).value ==
              doctest::Approx(beta).epsilon(1e-9));
    }
    for (int trial = 0; trial < 12; ++trial) {
        const int nf = corpus.range(2, 8);
        const int nl = corpus.range(1, 5);
        const int beta = corpus.range(1, nl);
        std::vector<int> leaders;
        Graph g = corpus.beta_uniform_graph(nf, nl, beta, 0.0, leaders);
        // no follower-follower edges: L_g diagonal, lambda_max = d_max^F
        auto [p, gs] = ground(g, leaders);
        LambdaMaxBounds b = lambda_max_bounds(g, p);
        CHECK(b.followers_independent);
        Eigen::MatrixXd offdiag = gs.grounded_laplacian;
        offdiag.diagonal().setZero();
        CHECK(offdiag.cwiseAbs().maxCoeff() == 0.0);
        CHECK(largest_eigenvalue(SymmetricMatrix(gs.grounded_laplacian)) ==
              doctest::Approx(b.lower_dmax).epsilon(1e-9));
    }
}

TEST_CASE("Weyl sandwich between follower Laplacian and grounded Laplacian") {
    testing::Corpus corpus(55);
    for (int trial = 0; trial < 25; ++trial) {
        Graph g = corpus.connected_graph(3, 14);
        auto leaders = corpus.random_leader_set(g.n);
        auto [p, gs] = ground(g, leaders);
        Eigen::VectorXd lg = eigendecompose(SymmetricMatrix(gs.grounded_laplacian)).eigenvalues;
        Eigen::VectorXd lbar = eigendecompose(SymmetricMatrix(gs.follower_laplacian)).eigenvalues;
        const double s_count = static_cast<double>(p.leaders.size());
        for (int i = 0; i < lg.size(); ++i) {
            CHECK(lbar(i) <= lg(i) + 1e-9);
            CHECK(lg(i) <= lbar(i) + s_count + 1e-9);
        }
    }
}
