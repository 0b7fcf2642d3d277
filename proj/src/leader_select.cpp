#include "gspec/leader_select.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "gspec/grounding.hpp"
#include "gspec/numerics.hpp"
#include "gspec/parallel.hpp"

namespace gspec {

namespace {

Eigen::MatrixXd grounded_inverse(const Graph& g, int k) {
    auto [p, gs] = ground(g, {k});
    Eigen::LLT<Eigen::MatrixXd> llt(gs.grounded_laplacian);
    if (llt.info() != Eigen::Success)
        throw not_positive_definite("grounded Laplacian not positive definite");
    return llt.solve(Eigen::MatrixXd::Identity(gs.dim(), gs.dim()));
}

// Laplacian with row/column v deleted, copied out of the precomputed full L.
Eigen::MatrixXd drop_vertex(const Eigen::MatrixXd& lap, int v) {
    const int n = static_cast<int>(lap.rows());
    Eigen::MatrixXd out(n - 1, n - 1);
    out.topLeftCorner(v, v) = lap.topLeftCorner(v, v);
    out.topRightCorner(v, n - 1 - v) = lap.topRightCorner(v, n - 1 - v);
    out.bottomLeftCorner(n - 1 - v, v) = lap.bottomLeftCorner(n - 1 - v, v);
    out.bottomRightCorner(n - 1 - v, n - 1 - v) = lap.bottomRightCorner(n - 1 - v, n - 1 - v);
    return out;
}

// Re-index a follower-space vector from grounding at `from` to grounding at
// `to`; the slot of the vertex that rejoins the follower set gets the mean.
Eigen::VectorXd reembed(const Eigen::VectorXd& vec, int from, int to, int n) {
    Eigen::VectorXd full(n);
    for (int v = 0, i = 0; v < n; ++v) full(v) = (v == from) ? vec.mean() : vec(i++);
    Eigen::VectorXd out(n - 1);
    for (int v = 0, i = 0; v < n; ++v)
        if (v != to) out(i++) = full(v);
    return out;
}

int argbest_min(const std::vector<LeaderScore>& scores, double LeaderScore::* field) {
    double best = scores[0].*field;
    for (const auto& s : scores) best = std::min(best, s.*field);
    for (const auto& s : scores)
        if (s.*field <= best + 1e-9) return s.vertex;
    return scores[0].vertex;
}

int argbest_max(const std::vector<LeaderScore>& scores, double LeaderScore::* field) {
    double best = scores[0].*field;
    for (const auto& s : scores) best = std::max(best, s.*field);
    for (const auto& s : scores)
        if (s.*field >= best - 1e-9) return s.vertex;
    return scores[0].vertex;
}

} // namespace

ResistanceData resistance_data(const Graph& g, int reference) {
    if (!is_connected(g)) throw graph_error("resistance_data: graph must be connected");
    if (g.n < 2) throw graph_error("resistance_data: need at least two vertices");
    if (reference < 0 || reference >= g.n) throw graph_error("reference vertex out of range");

    const Eigen::MatrixXd minv = grounded_inverse(g, reference);
    // follower row of vertex v under single grounding at `reference`
    auto row = [&](int v) { return v < reference ? v : v - 1; };

    ResistanceData rd;
    rd.pairwise = Eigen::MatrixXd::Zero(g.n, g.n);
    for (int i = 0; i < g.n; ++i) {
        if (i == reference) continue;
        const int fi = row(i);
        rd.pairwise(i, reference) = rd.pairwise(reference, i) = minv(fi, fi);
        for (int j = i + 1; j < g.n; ++j) {
            if (j == reference) continue;
            const int fj = row(j);
            const double r = minv(fi, fi) + minv(fj, fj) - 2.0 * minv(fi, fj);
            rd.pairwise(i, j) = rd.pairwise(j, i) = r;
        }
    }
    rd.effective = rd.pairwise.rowwise().sum();
    return rd;
}

LeaderRanking exhaustive_ranking(const Graph& g, int cap) {
    if (!is_connected(g)) throw graph_error("exhaustive_ranking: graph must be connected");
    if (g.n > cap)
        throw graph_error("exhaustive_ranking: " + std::to_string(g.n) + " vertices exceeds cap " +
                          std::to_string(cap) + "; raise the cap to proceed");
    if (g.n < 2) throw graph_error("exhaustive_ranking: need at least two vertices");

    LeaderRanking r;
    r.scores.resize(g.n);

    // H2 costs for the whole sweep from one grounding: the effective
    // resistance of v equals trace of the inverse grounded Laplacian at v.
    const ResistanceData rd = resistance_data(g, 0);
    const Eigen::MatrixXd lap = g.laplacian_matrix();

    parallel_chunks(g.n, [&](int begin, int end) {
        // warm starts carry over within a chunk: consecutive groundings
        // differ in a single vertex, so the previous extreme vectors are
        // good Krylov seeds after re-indexing
        int prev = -1;
        Eigen::VectorXd prev_perron, prev_top;
        for (int v = begin; v < end; ++v) {
            SymmetricMatrix lg(drop_vertex(lap, v));

            SolveOptions low_opts, high_opts;
            Eigen::VectorXd warm_low, warm_high;
            if (prev >= 0) {
                warm_low = reembed(prev_perron, prev, v, g.n);
                warm_high = reembed(prev_top, prev, v, g.n);
                low_opts.warm_start = &warm_low;
                high_opts.warm_start = &warm_high;
            }

            EigenPair low = smallest_eigenpair(lg, low_opts);
            EigenPair high = largest_eigenpair(lg, high_opts);

            LeaderScore& s = r.scores[v];
            s.vertex = v;
            s.grounding_centrality = low.value;
            s.h2_cost = 0.5 * rd.effective(v);
            s.delay_threshold = std::numbers::pi / (2.0 * high.value);

            prev = v;
            prev_perron = std::move(low.vector);
            prev_top = std::move(high.vector);
        }
    });

    r.best_h2 = argbest_min(r.scores, &LeaderScore::h2_cost);
    r.best_hinf = argbest_max(r.scores, &LeaderScore::grounding_centrality);
    r.best_delay = argbest_max(r.scores, &LeaderScore::delay_threshold);
    return r;
}

bool delay_dominance_certificate(const Graph& g, int k) {
    if (k < 0 || k >= g.n) throw graph_error("vertex out of range");
    for (int i = 0; i < g.n; ++i)
        if (i != k && g.degrees[k] < 2 * g.degrees[i]) return false;
    return true;
}

SimultaneousCertificate simultaneous_certificate(const Graph& g, int k) {
    if (k < 0 || k >= g.n) throw graph_error("vertex out of range");
    if (!is_connected(g)) throw graph_error("simultaneous_certificate: graph must be connected");

    SimultaneousCertificate cert;
    auto [p, gs] = ground(g, {k});
    EigenPair low = smallest_eigenpair(SymmetricMatrix(gs.grounded_laplacian));
    cert.xmin = low.vector.minCoeff();
    if (cert.xmin <= 0.0) {
        cert.holds = false;
        cert.reason = "Perron vector has a zero component";
        return cert;
    }
    double worst = 0.0;
    for (int i = 0; i < g.n; ++i)
        if (i != k) worst = std::max(worst, 2.0 * g.degrees[i] / (cert.xmin * cert.xmin));
    cert.margin = static_cast<double>(g.degrees[k]) - worst;
    cert.holds = cert.margin >= 0.0;
    return cert;
}

double resistance_trace_identity_check(const Graph& g, int i, int k) {
    if (i == k) throw graph_error("identity check needs distinct vertices");
    if (!is_connected(g)) throw graph_error("graph must be connected");

    const double trace_i = cholesky_trace_inverse(
        SymmetricMatrix(ground(g, {i}).second.grounded_laplacian));

    auto [pk, gsk] = ground(g, {k});
    SymmetricMatrix lgk(gsk.grounded_laplacian);
    const double trace_k = cholesky_trace_inverse(lgk);
    const Eigen::VectorXd row_sums = inverse_row_sums(lgk);

    Eigen::LLT<Eigen::MatrixXd> llt(gsk.grounded_laplacian);
    Eigen::VectorXd ei = Eigen::VectorXd::Zero(gsk.dim());
    const int fi = pk.follower_index[i];
    ei(fi) = 1.0;
    const double r_ik = llt.solve(ei)(fi);

    const double rhs = trace_k + g.n * r_ik - 2.0 * row_sums(fi);
    return std::abs(trace_i - rhs);
}

} // namespace gspec
