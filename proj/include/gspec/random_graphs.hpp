#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gspec/graph.hpp"

namespace gspec {

struct ErConfig {
    int n = 0;
    double p = 0.0;        // in (0, 1]
    std::uint64_t seed = 0;
};

struct RrgConfig {
    int n = 0;
    int d = 0;             // n*d must be even, d < n
    std::uint64_t seed = 0;
};

/// G(n, p): each of the C(n,2) pairs present independently with
/// probability p. Deterministic per seed.
Graph gen_er(const ErConfig& cfg);

/// Random d-regular simple graph via pairing of half-edges with
/// suitability resampling and full restart when stuck (restart budget
/// 10000). Postcondition: every degree exactly d, no loops or multi-edges.
Graph gen_rrg(const RrgConfig& cfg);

enum class GraphKind { er, rrg };

/// One metric across the trials of one size.
struct ExperimentResult {
    int n = 0;
    int trials = 0;
    int redraws = 0;                 // disconnected samples redrawn
    std::vector<double> samples;
    double mean = 0.0;
    double stddev = 0.0;             // sample standard deviation
    double target = 0.0;             // NaN when no closed-form target applies
    double relative_error = 0.0;     // |mean - target| / target, NaN without target
};

struct DisorderExperiment {
    std::vector<ExperimentResult> h2;
    std::vector<ExperimentResult> hinf;
};

/// Monte Carlo estimate of the H2/Hinf disorders across sizes. Leaders are
/// drawn uniformly at random per trial; disconnected samples are redrawn and
/// counted. ER targets are (|S|+1)/(2|S|p) and 1/(|S|p); RRG results carry
/// no closed-form target.
DisorderExperiment run_disorder_experiment(GraphKind kind, const std::vector<int>& sizes,
                                           int trials, double p_or_d, int leader_count,
                                           std::uint64_t base_seed);

/// Per-size mean of the ratio (pi/(2np)) / tau_hat = lambda_max(L_g)/(np)
/// for ER graphs.
std::vector<ExperimentResult> run_delay_experiment(const std::vector<int>& sizes, int trials,
                                                   double p, int leader_count,
                                                   std::uint64_t base_seed);

struct RrgDelayCheck {
    bool lower_ok = false;   // tau_hat >= pi/(4d)
    bool upper_ok = false;   // tau_hat <= pi/(2d)
    double tau_hat = 0.0;
};

/// Checks pi/(4d) <= tau_hat <= pi/(2d) on one connected RRG sample with
/// `leader_count` uniformly random leaders.
RrgDelayCheck rrg_delay_bounds_check(const RrgConfig& cfg, int leader_count);

/// Parsed experiment manifest (JSON): kind, metric, sizes, p or d, leader
/// count, trials, base seed.
struct ExperimentManifest {
    GraphKind kind = GraphKind::er;
    std::string metric = "h2";       // h2 | hinf | delay
    std::vector<int> sizes;
    double p = 0.0;                  // ER
    int d = 0;                       // RRG
    int leader_count = 1;
    int trials = 10;
    std::uint64_t base_seed = 42;
    bool base_seed_set = false;      // true when the manifest pinned the seed itself
};

/// Per-trial rows behind the experiment CSV:
/// n, trial, h2, hinf, tau_hat, target, ratio.
struct ExperimentRow {
    int n = 0;
    int trial = 0;
    double h2 = 0.0;
    double hinf = 0.0;
    double tau_hat = 0.0;
    double target = 0.0;
    double ratio = 0.0;
};

struct ExperimentOutput {
    std::vector<ExperimentRow> rows;
    std::vector<ExperimentResult> summary;   // per size, for the manifest metric
};

ExperimentOutput run_experiment(const ExperimentManifest& m);

} // namespace gspec
