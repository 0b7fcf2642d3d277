#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gspec/graph.hpp"
#include "gspec/grounding.hpp"
#include "gspec/leader_select.hpp"
#include "gspec/numerics.hpp"
#include "gspec/random_graphs.hpp"
#include "test_support.hpp"

using namespace gspec;

namespace {

// independent per-vertex metrics straight from dense decompositions
LeaderScore dense_score(const Graph& g, int v) {
    auto [p, gs] = ground(g, {v});
    SymmetricMatrix lg(gs.grounded_laplacian);
    EigenDecomposition ed = eigendecompose(lg);
    LeaderScore s;
    s.vertex = v;
    s.grounding_centrality = ed.eigenvalues(0);
    s.h2_cost = 0.5 * cholesky_trace_inverse(lg);
    s.delay_threshold = std::numbers::pi / (2.0 * ed.eigenvalues(ed.eigenvalues.size() - 1));
    return s;
}

} // namespace

TEST_CASE("resistance distances on the textbook graphs") {
    Graph k2 = build_graph(2, std::vector<std::pair<int, int>>{{0, 1}});
    CHECK(resistance_data(k2).pairwise(0, 1) == doctest::Approx(1.0));

    ResistanceData p3 = resistance_data(path_graph(3));
    CHECK(p3.pairwise(0, 2) == doctest::Approx(2.0));
    CHECK(p3.pairwise(0, 1) == doctest::Approx(1.0));
    CHECK(p3.pairwise(1, 2) == doctest::Approx(1.0));

    ResistanceData k3 = resistance_data(complete_graph(3));
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            CHECK(k3.pairwise(i, j) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(resistance_data(build_graph(3, std::vector<std::pair<int, int>>{{0, 1}})),
                    graph_error);
}

TEST_CASE("resistance invariants on random graphs") {
    testing::Corpus corpus(13);
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = corpus.connected_graph(3, 10);
        ResistanceData rd = resistance_data(g);

        CHECK((rd.pairwise - rd.pairwise.transpose()).cwiseAbs().maxCoeff() < 1e-10);
        CHECK(rd.pairwise.diagonal().cwiseAbs().maxCoeff() < 1e-12);

        for (int i = 0; i < g.n; ++i) {
            for (int j = 0; j < g.n; ++j) {
                if (i == j) continue;
                CHECK(rd.pairwise(i, j) >=
                      std::max(1.0 / g.degrees[i], 1.0 / g.degrees[j]) - 1e-9);
                for (int k = 0; k < g.n; ++k)
                    CHECK(rd.pairwise(i, j) <=
                          rd.pairwise(i, k) + rd.pairwise(k, j) + 1e-9);
            }
            // effective resistance equals the grounded trace at i
            const double trace_i =
                cholesky_trace_inverse(SymmetricMatrix(ground(g, {i}).second.grounded_laplacian));
            CHECK(rd.effective(i) == doctest::Approx(trace_i).epsilon(1e-8));
        }

        // reference independence
        ResistanceData other = resistance_data(g, g.n - 1);
        CHECK((rd.pairwise - other.pairwise).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("exhaustive ranking matches the dense oracle") {
    testing::Corpus corpus(29);
    for (int trial = 0; trial < 8; ++trial) {
        Graph g = corpus.connected_graph(3, 12);
        LeaderRanking r = exhaustive_ranking(g);
        REQUIRE(static_cast<int>(r.scores.size()) == g.n);
        for (int v = 0; v < g.n; ++v) {
            LeaderScore expect = dense_score(g, v);
            CHECK(r.scores[v].grounding_centrality ==
                  doctest::Approx(expect.grounding_centrality).epsilon(1e-8));
            CHECK(r.scores[v].h2_cost == doctest::Approx(expect.h2_cost).epsilon(1e-8));
            CHECK(r.scores[v].delay_threshold ==
                  doctest::Approx(expect.delay_threshold).epsilon(1e-8));
        }
    }
}

TEST_CASE("ranking on the path and the small broom") {
    LeaderRanking p3 = exhaustive_ranking(path_graph(3));
    CHECK(p3.best_h2 == 1);
    CHECK(p3.best_hinf == 1);
    CHECK(p3.best_delay == 1);

    // broom B_{9,4}: star center is vertex 4
    Graph broom = broom_tree(9, 4);
    LeaderRanking rb = exhaustive_ranking(broom);
    CHECK(rb.best_h2 == 4);
    CHECK(rb.best_delay == 4);
    // grounding centrality favors a tail vertex over the center
    CHECK(rb.best_hinf > 4);

    CHECK_THROWS_AS(exhaustive_ranking(path_graph(30), 20), graph_error);
}

TEST_CASE("delay dominance certificate") {
    CHECK(delay_dominance_certificate(star_graph(4), 0));
    CHECK_FALSE(delay_dominance_certificate(star_graph(4), 1));

    // highest degree does not imply delay-optimal: the broom-pair black node
    Graph pair = broom_pair();
    CHECK_FALSE(delay_dominance_certificate(pair, 2));
    LeaderRanking rp = exhaustive_ranking(pair);
    CHECK(rp.best_delay == 3);   // gray middle beats the degree-3 black nodes

    // broom center with enough leaves
    Graph broom = broom_tree(9, 4);
    CHECK(delay_dominance_certificate(broom, 4));
}

TEST_CASE("certificate soundness against the exhaustive ranking") {
    testing::Corpus corpus(47);
    int dominance_hits = 0, simultaneous_hits = 0;
    for (int trial = 0; trial < 25; ++trial) {
        // sparse connected base (path plus a few chords), then a hub coned
        // over every base vertex so its degree dominates
        const int nb = corpus.range(10, 16);
        std::vector<std::pair<int, int>> edges;
        for (int v = 0; v + 1 < nb; ++v) edges.emplace_back(v, v + 1);
        for (int u = 0; u < nb; ++u)
            for (int v = u + 2; v < nb; ++v)
                if (corpus.uniform() < 0.06) edges.emplace_back(u, v);
        const int hub = nb;
        for (int v = 0; v < nb; ++v) edges.emplace_back(v, hub);
        Graph g = build_graph(nb + 1, edges);

        LeaderRanking r = exhaustive_ranking(g);
        for (int v = 0; v < g.n; ++v) {
            if (delay_dominance_certificate(g, v)) {
                ++dominance_hits;
                CHECK(r.scores[v].delay_threshold >=
                      r.scores[r.best_delay].delay_threshold - 1e-9);
            }
            SimultaneousCertificate cert = simultaneous_certificate(g, v);
            if (cert.holds) {
                ++simultaneous_hits;
                CHECK(r.scores[v].h2_cost <= r.scores[r.best_h2].h2_cost + 1e-9);
                CHECK(r.scores[v].grounding_centrality >=
                      r.scores[r.best_hinf].grounding_centrality - 1e-9);
                CHECK(r.scores[v].delay_threshold >=
                      r.scores[r.best_delay].delay_threshold - 1e-9);
            }
        }
    }
    CHECK(dominance_hits > 0);
    CHECK(simultaneous_hits > 0);
}

TEST_CASE("simultaneous certificate on stars and paths") {
    SimultaneousCertificate star = simultaneous_certificate(star_graph(5), 0);
    CHECK(star.holds);
    CHECK(star.xmin == doctest::Approx(1.0));

    SimultaneousCertificate mid = simultaneous_certificate(path_graph(3), 1);
    CHECK(mid.holds);
    CHECK(mid.margin == doctest::Approx(0.0));
    LeaderRanking r = exhaustive_ranking(path_graph(3));
    CHECK(r.best_h2 == 1);
    CHECK(r.best_hinf == 1);
    CHECK(r.best_delay == 1);

    CHECK_FALSE(simultaneous_certificate(path_graph(4), 0).holds);
}

TEST_CASE("appended hub over a random graph is the all-round best leader") {
    // wiring a new node to 2.5x the maximum degree of an ER(500, 0.05) graph
    // should satisfy the simultaneous condition nearly always
    std::mt19937_64 eng(7777);
    int holds = 0;
    for (int inst = 0; inst < 3; ++inst) {
        Graph base = gen_er({500, 0.05, static_cast<std::uint64_t>(100 + inst)});
        REQUIRE(is_connected(base));
        int dmax = 0;
        for (int d : base.degrees) dmax = std::max(dmax, d);
        const int hub_degree = std::min(base.n, static_cast<int>(std::ceil(2.5 * dmax)));
        std::vector<int> verts(base.n);
        for (int i = 0; i < base.n; ++i) verts[i] = i;
        for (int i = 0; i < hub_degree; ++i)
            std::swap(verts[i], verts[i + eng() % (base.n - i)]);
        auto edges = base.edges;
        for (int i = 0; i < hub_degree; ++i) edges.emplace_back(verts[i], base.n);
        Graph g = build_graph(base.n + 1, edges);

        SimultaneousCertificate cert = simultaneous_certificate(g, base.n);
        if (!cert.holds) continue;
        ++holds;
        LeaderRanking r = exhaustive_ranking(g);
        CHECK(r.best_h2 == base.n);
        CHECK(r.best_hinf == base.n);
        CHECK(r.best_delay == base.n);
    }
    CHECK(holds >= 2);
}

TEST_CASE("resistance trace identity") {
    CHECK(resistance_trace_identity_check(path_graph(3), 0, 2) < 1e-10);
    Graph k3 = complete_graph(3);
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k)
            if (i != k) CHECK(resistance_trace_identity_check(k3, i, k) < 1e-10);

    testing::Corpus corpus(61);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = corpus.connected_graph(4, 10);
        for (int i = 0; i < g.n; ++i)
            for (int k = 0; k < g.n; ++k)
                if (i != k) CHECK(resistance_trace_identity_check(g, i, k) < 1e-8);
    }
    CHECK_THROWS_AS(resistance_trace_identity_check(path_graph(3), 1, 1), graph_error);
}
