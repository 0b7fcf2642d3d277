#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>
#include <unistd.h>

#include "gspec/bounds.hpp"
#include "gspec/dde_sim.hpp"
#include "gspec/graph.hpp"
#include "gspec/grounding.hpp"
#include "gspec/io.hpp"
#include "gspec/leader_select.hpp"
#include "gspec/numerics.hpp"
#include "gspec/random_graphs.hpp"
#include "gspec/robustness.hpp"

namespace {

using nlohmann::json;

enum ExitCode { kOk = 0, kUsage = 2, kInput = 3, kNumerical = 4 };

std::string default_format() { return isatty(fileno(stdout)) ? "text" : "json"; }

// flat "key: value" rendering with keys in sorted order, stable across runs
void print_text(std::ostream& out, const json& j, const std::string& prefix = "") {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            print_text(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
    } else if (j.is_array()) {
        int i = 0;
        for (const auto& item : j) print_text(out, item, prefix + "[" + std::to_string(i++) + "]");
    } else {
        out << prefix << ": " << j.dump() << '\n';
    }
}

struct OutputSink {
    std::string path;
    std::ofstream file;
    std::ostream& stream() {
        if (path.empty()) return std::cout;
        if (!file.is_open()) {
            file.open(path);
            if (!file) throw gspec::parse_error("cannot open output file: " + path);
        }
        return file;
    }
};

void emit(const json& j, const std::string& format, OutputSink& sink) {
    if (format == "json")
        sink.stream() << j.dump(2) << '\n';
    else
        print_text(sink.stream(), j);
}

json bracket_to_json(const gspec::BracketResult& b) {
    return json{{"tau_lo", b.tau_lo},       {"tau_hi", b.tau_hi},
                {"midpoint", b.midpoint},   {"analytic_threshold", b.analytic},
                {"probes", b.probes},       {"inconclusive", b.inconclusive}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"grounded-spectra: robustness analysis of leader-follower consensus networks"};
    app.require_subcommand(1);

    std::string graph_path, out_path, manifest_path;
    std::string format = default_format();
    std::string metric = "all";
    std::vector<int> leaders;
    std::uint64_t seed = 42;
    double tol = 0.02;

    auto add_common = [&](CLI::App* cmd, bool needs_graph) {
        if (needs_graph)
            cmd->add_option("--graph", graph_path, "graph file (edge list or .json)")->required();
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        cmd->add_option("--out", out_path, "output path (default stdout)");
        cmd->add_option("--seed", seed, "base seed for randomized steps");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "full spectral/robustness report");
    add_common(analyze, true);
    analyze->add_option("--leaders", leaders, "leader vertex list")->required()->delimiter(',');
    double gamma_check = 0.0, tau_check = 0.0;
    analyze->add_option("--gamma", gamma_check, "also check the Hinf conditions at this gamma");
    analyze->add_option("--tau", tau_check, "also check the delay conditions at this tau");
    int subset_budget = 2000;
    analyze->add_option("--subset-budget", subset_budget,
                        "random subsets for the isoperimetric bound on large graphs");

    CLI::App* select = app.add_subcommand("select-leader", "rank all single-leader choices");
    add_common(select, true);
    select->add_option("--metric", metric, "h2 | hinf | delay | all")
        ->check(CLI::IsMember({"h2", "hinf", "delay", "all"}));
    int cap = 1500;
    select->add_option("--cap", cap, "refuse graphs larger than this");

    CLI::App* design = app.add_subcommand("design", "build a network with lambda_1 = lambda_max = beta");
    add_common(design, false);
    int n_followers = 0, n_leaders = 0, beta = 0;
    design->add_option("--followers", n_followers, "follower count")->required();
    design->add_option("--leaders-count", n_leaders, "leader count")->required();
    design->add_option("--beta", beta, "leader neighbors per follower")->required();

    CLI::App* experiment = app.add_subcommand("experiment", "run a random-graph experiment manifest");
    add_common(experiment, false);
    experiment->add_option("--manifest", manifest_path, "experiment manifest (JSON)")->required();

    CLI::App* simulate = app.add_subcommand("simulate", "integrate the follower dynamics");
    add_common(simulate, true);
    simulate->add_option("--leaders", leaders, "leader vertex list")->required()->delimiter(',');
    double sim_tau = 0.0, sim_dt = 0.0, sim_horizon = 0.0, noise_std = 0.0;
    std::vector<double> leader_values, x0_values;
    int stride = 1;
    simulate->add_option("--tau", sim_tau, "communication delay (default 0)");
    simulate->add_option("--dt", sim_dt, "step size (default: auto)");
    simulate->add_option("--horizon", sim_horizon, "total simulated time (default: auto)");
    simulate->add_option("--noise-std", noise_std, "white-noise intensity (default 0)");
    simulate->add_option("--leader-values", leader_values, "x_S(0), one per leader (default 1)")
        ->delimiter(',');
    simulate->add_option("--x0", x0_values, "initial follower state (default 0)")->delimiter(',');
    simulate->add_option("--stride", stride, "record every k-th sample");

    CLI::App* bracket = app.add_subcommand("bracket", "bracket the empirical delay threshold");
    add_common(bracket, true);
    bracket->add_option("--leaders", leaders, "leader vertex list")->required()->delimiter(',');
    bracket->add_option("--tol", tol, "relative bracket width to stop at");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    OutputSink sink;
    try {
        sink.path = out_path;

        if (*analyze) {
            if (format == "csv") {
                std::cerr << "analyze does not support csv output\n";
                return kUsage;
            }
            if (leaders.empty()) {
                std::cerr << "analyze needs a nonempty --leaders list\n";
                return kUsage;
            }
            gspec::Graph g = gspec::load_graph(graph_path);
            gspec::AnalysisReport rep = gspec::analyze(g, leaders, subset_budget, seed);
            json j = gspec::report_to_json(rep);
            gspec::LeaderPartition p = gspec::make_partition(g, leaders);
            if (gamma_check > 0) {
                auto c = gspec::hinf_condition_check(g, p, gamma_check);
                j["hinf_conditions"] = {{"gamma", gamma_check},
                                        {"necessary_met", c.necessary_met},
                                        {"sufficient_met", c.sufficient_met}};
            }
            if (tau_check > 0) {
                auto c = gspec::delay_condition_check(g, p, tau_check);
                j["delay_conditions"] = {{"tau", tau_check},
                                         {"necessary_met", c.necessary_met},
                                         {"sufficient_met", c.sufficient_met},
                                         {"exact_met", c.exact_met}};
            }
            emit(j, format, sink);
        } else if (*select) {
            gspec::Graph g = gspec::load_graph(graph_path);
            gspec::LeaderRanking r = gspec::exhaustive_ranking(g, cap);
            if (format == "csv") {
                gspec::write_ranking_csv(sink.stream(), r);
            } else {
                json j = gspec::ranking_to_json(r);
                if (metric != "all") {
                    const int winner = metric == "h2"     ? r.best_h2
                                       : metric == "hinf" ? r.best_hinf
                                                          : r.best_delay;
                    j["winner"] = winner;
                    j["metric"] = metric;
                } else {
                    auto dom = gspec::delay_dominance_certificate(g, r.best_delay);
                    auto sim = gspec::simultaneous_certificate(
                        g, r.best_hinf);
                    j["certificates"] = {
                        {"delay_dominance_at_best_delay", dom},
                        {"simultaneous_at_best_hinf",
                         {{"holds", sim.holds}, {"x_min", sim.xmin}, {"margin", sim.margin}}}};
                }
                emit(j, format, sink);
            }
        } else if (*design) {
            gspec::DesignedNetwork d = gspec::design_optimal_network(n_followers, n_leaders, beta);
            auto [p, gs] = gspec::ground(d.graph, d.leaders);
            gspec::SpectralSummary s =
                gspec::spectral_summary(gspec::SymmetricMatrix(gs.grounded_laplacian));
            json j = gspec::graph_to_json(d.graph);
            j["leaders"] = d.leaders;
            j["lambda_min"] = s.lambda_min;
            j["lambda_max"] = s.lambda_max;
            j["beta"] = beta;
            emit(j, format == "csv" ? "json" : format, sink);
        } else if (*experiment) {
            gspec::ExperimentManifest m = gspec::load_manifest(manifest_path);
            if (!m.base_seed_set) m.base_seed = seed;
            gspec::ExperimentOutput out = gspec::run_experiment(m);
            gspec::write_experiment_csv(sink.stream(), out);
            for (const auto& s : out.summary) {
                std::fprintf(stderr, "n=%d  mean=%.6g  std=%.6g  target=%.6g  rel_err=%.6g\n",
                             s.n, s.mean, s.stddev, s.target, s.relative_error);
            }
        } else if (*simulate) {
            gspec::Graph g = gspec::load_graph(graph_path);
            auto [p, gs] = gspec::ground(g, leaders);
            gspec::SpectralSummary s =
                gspec::spectral_summary(gspec::SymmetricMatrix(gs.grounded_laplacian));
            gspec::SimConfig cfg;
            cfg.tau = sim_tau;
            if (sim_dt > 0) {
                cfg.dt = sim_dt;
            } else if (sim_tau > 0) {
                const int lag =
                    std::max(200, static_cast<int>(std::ceil(20.0 * sim_tau * s.lambda_max)));
                cfg.dt = sim_tau / lag;
            } else {
                cfg.dt = 0.05 / s.lambda_max;
            }
            cfg.horizon = sim_horizon > 0
                              ? sim_horizon
                              : std::max(20.0 / s.lambda_min, 10.0 * sim_tau);
            if (noise_std > 0) {
                cfg.disturbance = gspec::DisturbanceKind::white_noise;
                cfg.noise_std = noise_std;
                cfg.noise_seed = seed;
            }
            cfg.leader_states = leader_values.empty()
                                    ? Eigen::VectorXd::Ones(p.leaders.size()).eval()
                                    : Eigen::Map<Eigen::VectorXd>(leader_values.data(),
                                                                  leader_values.size())
                                          .eval();
            if (!x0_values.empty())
                cfg.initial_followers =
                    Eigen::Map<Eigen::VectorXd>(x0_values.data(), x0_values.size());
            cfg.record_stride = stride;
            gspec::Trajectory traj = gspec::simulate(gs, cfg);

            const char* cls = traj.classification == gspec::SimClass::converged   ? "converged"
                              : traj.classification == gspec::SimClass::diverged ? "diverged"
                                                                                 : "inconclusive";
            if (format == "csv" || !out_path.empty()) {
                std::ostream& os = sink.stream();
                os << 't';
                for (int v : p.followers) os << ",x_" << v;
                os << '\n';
                for (std::size_t k = 0; k < traj.time.size(); ++k) {
                    os << traj.time[k];
                    for (int c = 0; c < traj.states.cols(); ++c) os << ',' << traj.states(static_cast<int>(k), c);
                    os << '\n';
                }
                std::fprintf(stderr, "classification=%s terminal_error=%.6g\n", cls,
                             traj.terminal_error);
            } else {
                json j{{"classification", cls},
                       {"initial_error", traj.initial_error},
                       {"terminal_error", traj.terminal_error},
                       {"horizon_extended", traj.horizon_extended},
                       {"steps_recorded", traj.time.size()}};
                emit(j, format, sink);
            }
        } else if (*bracket) {
            gspec::Graph g = gspec::load_graph(graph_path);
            auto [p, gs] = gspec::ground(g, leaders);
            gspec::BracketResult b = gspec::bracket_threshold(gs, tol);
            emit(bracket_to_json(b), format == "csv" ? "json" : format, sink);
        }
    } catch (const gspec::parse_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const gspec::graph_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kInput;
    } catch (const gspec::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kNumerical;
    }
    return kOk;
}
