#include "gspec/random_graphs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <unordered_set>

#include "gspec/grounding.hpp"
#include "gspec/numerics.hpp"
#include "gspec/parallel.hpp"

namespace gspec {

namespace {

constexpr int kRestartBudget = 10000;
constexpr int kRedrawBudget = 200;

// Self-contained generator wrapper; raw-bit uniforms keep samples identical
// across standard-library implementations.
struct Rng {
    std::mt19937_64 eng;
    explicit Rng(std::uint64_t seed) : eng(seed) {}
    double uniform() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % bound;
        std::uint64_t x;
        do {
            x = eng();
        } while (x >= limit);
        return x % bound;
    }
};

Graph er_from_engine(int n, double p, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.uniform() < p) edges.emplace_back(i, j);
    return build_graph(n, edges);
}

// One pairing attempt: repeatedly match two random free half-edges,
// resampling unsuitable picks (loop or repeated edge); gives up when the
// remaining half-edges admit no suitable pair.
bool rrg_attempt(int n, int d, Rng& rng, std::vector<std::pair<int, int>>& edges) {
    edges.clear();
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * d);
    for (int v = 0; v < n; ++v)
        for (int k = 0; k < d; ++k) stubs.push_back(v);

    std::unordered_set<long long> present;
    present.reserve(static_cast<std::size_t>(n) * d);
    auto key = [n](int u, int v) {
        return static_cast<long long>(std::min(u, v)) * n + std::max(u, v);
    };

    int failures = 0;
    while (!stubs.empty()) {
        const std::size_t ai = rng.below(stubs.size());
        std::size_t bi = rng.below(stubs.size() - 1);
        if (bi >= ai) ++bi;
        const int u = stubs[ai];
        const int v = stubs[bi];
        if (u != v && !present.count(key(u, v))) {
            present.insert(key(u, v));
            edges.emplace_back(u, v);
            // remove both stubs, higher index first
            const std::size_t hi = std::max(ai, bi), lo = std::min(ai, bi);
            stubs[hi] = stubs.back();
            stubs.pop_back();
            stubs[lo] = stubs.back();
            stubs.pop_back();
            failures = 0;
            continue;
        }
        if (++failures > 64 + static_cast<int>(stubs.size())) {
            // exact stuck check: any suitable pair left?
            bool suitable = false;
            for (std::size_t x = 0; x < stubs.size() && !suitable; ++x)
                for (std::size_t y = x + 1; y < stubs.size() && !suitable; ++y)
                    suitable = stubs[x] != stubs[y] && !present.count(key(stubs[x], stubs[y]));
            if (!suitable) return false;
            failures = 0;
        }
    }
    return true;
}

Graph rrg_from_engine(int n, int d, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int attempt = 0; attempt < kRestartBudget; ++attempt)
        if (rrg_attempt(n, d, rng, edges)) return build_graph(n, edges);
    throw graph_error("gen_rrg: restart budget exhausted (" + std::to_string(kRestartBudget) + ")");
}

std::vector<int> sample_leaders(int n, int count, Rng& rng) {
    std::vector<int> leaders;
    std::vector<char> used(n, 0);
    while (static_cast<int>(leaders.size()) < count) {
        const int v = static_cast<int>(rng.below(n));
        if (!used[v]) {
            used[v] = 1;
            leaders.push_back(v);
        }
    }
    std::sort(leaders.begin(), leaders.end());
    return leaders;
}

struct TrialMetrics {
    double h2 = std::numeric_limits<double>::quiet_NaN();
    double hinf = std::numeric_limits<double>::quiet_NaN();
    double tau_hat = std::numeric_limits<double>::quiet_NaN();
    int redraws = 0;
};

enum : unsigned { kNeedH2 = 1, kNeedHinf = 2, kNeedTau = 4 };

TrialMetrics run_trial(GraphKind kind, int n, double p, int d, int leader_count,
                       std::uint64_t seed, unsigned need) {
    Rng rng(seed);
    Graph g;
    TrialMetrics m;
    for (;; ++m.redraws) {
        if (m.redraws > kRedrawBudget)
            throw graph_error("experiment: redraw budget exhausted while seeking a connected sample");
        g = kind == GraphKind::er ? er_from_engine(n, p, rng) : rrg_from_engine(n, d, rng);
        if (is_connected(g)) break;
    }
    const std::vector<int> leaders = sample_leaders(n, leader_count, rng);
    auto [part, gs] = ground(g, leaders);
    SymmetricMatrix lg(gs.grounded_laplacian);
    if (need & kNeedH2) m.h2 = 0.5 * cholesky_trace_inverse(lg);
    if (need & kNeedHinf) m.hinf = 1.0 / smallest_eigenpair(lg).value;
    if (need & kNeedTau) m.tau_hat = std::numbers::pi / (2.0 * largest_eigenvalue(lg));
    return m;
}

ExperimentResult summarize(int n, std::vector<double> samples, int redraws, double target) {
    ExperimentResult r;
    r.n = n;
    r.trials = static_cast<int>(samples.size());
    r.redraws = redraws;
    double sum = 0.0;
    for (double s : samples) sum += s;
    r.mean = sum / r.trials;
    double ss = 0.0;
    for (double s : samples) ss += (s - r.mean) * (s - r.mean);
    r.stddev = r.trials > 1 ? std::sqrt(ss / (r.trials - 1)) : 0.0;
    r.target = target;
    r.relative_error = std::isnan(target) ? target : std::abs(r.mean - target) / std::abs(target);
    r.samples = std::move(samples);
    return r;
}

} // namespace

Graph gen_er(const ErConfig& cfg) {
    if (cfg.n < 0) throw graph_error("gen_er: negative vertex count");
    if (!(cfg.p > 0.0 && cfg.p <= 1.0)) throw graph_error("gen_er: p must be in (0, 1]");
    Rng rng(cfg.seed);
    return er_from_engine(cfg.n, cfg.p, rng);
}

Graph gen_rrg(const RrgConfig& cfg) {
    if (cfg.d < 0 || cfg.d >= cfg.n)
        throw graph_error("gen_rrg: need 0 <= d < n");
    if ((static_cast<long long>(cfg.n) * cfg.d) % 2 != 0)
        throw graph_error("gen_rrg: n*d must be even");
    Rng rng(cfg.seed);
    return rrg_from_engine(cfg.n, cfg.d, rng);
}

DisorderExperiment run_disorder_experiment(GraphKind kind, const std::vector<int>& sizes,
                                           int trials, double p_or_d, int leader_count,
                                           std::uint64_t base_seed) {
    DisorderExperiment out;
    const double p = p_or_d;
    const int d = static_cast<int>(p_or_d);
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const int n = sizes[si];
        std::vector<TrialMetrics> metrics(trials);
        parallel_for(trials, [&](int t) {
            const std::uint64_t seed = base_seed + si * static_cast<std::uint64_t>(trials) + t;
            metrics[t] = run_trial(kind, n, p, d, leader_count, seed, kNeedH2 | kNeedHinf);
        });
        std::vector<double> h2(trials), hinf(trials);
        int redraws = 0;
        for (int t = 0; t < trials; ++t) {
            h2[t] = metrics[t].h2;
            hinf[t] = metrics[t].hinf;
            redraws += metrics[t].redraws;
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const double h2_target =
            kind == GraphKind::er ? (leader_count + 1.0) / (2.0 * leader_count * p) : nan;
        const double hinf_target = kind == GraphKind::er ? 1.0 / (leader_count * p) : nan;
        out.h2.push_back(summarize(n, std::move(h2), redraws, h2_target));
        out.hinf.push_back(summarize(n, std::move(hinf), redraws, hinf_target));
    }
    return out;
}

std::vector<ExperimentResult> run_delay_experiment(const std::vector<int>& sizes, int trials,
                                                   double p, int leader_count,
                                                   std::uint64_t base_seed) {
    std::vector<ExperimentResult> out;
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const int n = sizes[si];
        std::vector<double> ratio(trials);
        std::vector<int> redraws(trials, 0);
        parallel_for(trials, [&](int t) {
            const std::uint64_t seed = base_seed + si * static_cast<std::uint64_t>(trials) + t;
            TrialMetrics m = run_trial(GraphKind::er, n, p, 0, leader_count, seed, kNeedTau);
            ratio[t] = (std::numbers::pi / (2.0 * n * p)) / m.tau_hat;
            redraws[t] = m.redraws;
        });
        int total_redraws = 0;
        for (int r : redraws) total_redraws += r;
        out.push_back(summarize(n, std::move(ratio), total_redraws, 1.0));
    }
    return out;
}

RrgDelayCheck rrg_delay_bounds_check(const RrgConfig& cfg, int leader_count) {
    TrialMetrics m = run_trial(GraphKind::rrg, cfg.n, 0.0, cfg.d, leader_count, cfg.seed, kNeedTau);
    RrgDelayCheck c;
    c.tau_hat = m.tau_hat;
    const double pi = std::numbers::pi;
    c.lower_ok = c.tau_hat >= pi / (4.0 * cfg.d) - 1e-9;
    c.upper_ok = c.tau_hat <= pi / (2.0 * cfg.d) + 1e-9;
    return c;
}

ExperimentOutput run_experiment(const ExperimentManifest& m) {
    ExperimentOutput out;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t si = 0; si < m.sizes.size(); ++si) {
        const int n = m.sizes[si];
        std::vector<TrialMetrics> metrics(m.trials);
        parallel_for(m.trials, [&](int t) {
            const std::uint64_t seed = m.base_seed + si * static_cast<std::uint64_t>(m.trials) + t;
            metrics[t] =
                run_trial(m.kind, n, m.p, m.d, m.leader_count, seed, kNeedH2 | kNeedHinf | kNeedTau);
        });
        double target = nan;
        if (m.kind == GraphKind::er) {
            if (m.metric == "h2")
                target = (m.leader_count + 1.0) / (2.0 * m.leader_count * m.p);
            else if (m.metric == "hinf")
                target = 1.0 / (m.leader_count * m.p);
            else if (m.metric == "delay")
                target = 1.0;
        }
        std::vector<double> chosen(m.trials);
        int redraws = 0;
        for (int t = 0; t < m.trials; ++t) {
            const TrialMetrics& tm = metrics[t];
            double metric_value = nan;
            if (m.metric == "h2") metric_value = tm.h2;
            else if (m.metric == "hinf") metric_value = tm.hinf;
            else if (m.metric == "delay")
                metric_value = (std::numbers::pi / (2.0 * n * m.p)) / tm.tau_hat;
            chosen[t] = metric_value;
            redraws += tm.redraws;
            const double ratio = std::isnan(target) ? nan : metric_value / target;
            out.rows.push_back({n, t, tm.h2, tm.hinf, tm.tau_hat, target, ratio});
        }
        out.summary.push_back(summarize(n, std::move(chosen), redraws, target));
    }
    return out;
}

} // namespace gspec
