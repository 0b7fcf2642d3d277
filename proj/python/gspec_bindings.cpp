#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "gspec/bounds.hpp"
#include "gspec/dde_sim.hpp"
#include "gspec/graph.hpp"
#include "gspec/grounding.hpp"
#include "gspec/io.hpp"
#include "gspec/leader_select.hpp"
#include "gspec/numerics.hpp"
#include "gspec/random_graphs.hpp"
#include "gspec/robustness.hpp"

namespace py = pybind11;
using namespace gspec;

namespace {

py::object json_to_py(const nlohmann::json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

SymmetricMatrix as_symmetric(const Eigen::MatrixXd& m) { return SymmetricMatrix(m); }

const char* class_name(SimClass c) {
    switch (c) {
        case SimClass::converged: return "converged";
        case SimClass::diverged: return "diverged";
        default: return "inconclusive";
    }
}

} // namespace

PYBIND11_MODULE(_gspec, m) {
    m.doc() = "Spectral robustness analysis of leader-follower consensus networks";

    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<graph_error>(m, "GraphError", PyExc_ValueError);
    py::register_exception<numerical_error>(m, "NumericalError", PyExc_RuntimeError);

    py::class_<Graph>(m, "Graph")
        .def_readonly("n", &Graph::n)
        .def_property_readonly("edges", [](const Graph& g) { return g.edges; })
        .def_property_readonly("degrees", [](const Graph& g) { return g.degrees; })
        .def("edge_count", &Graph::edge_count)
        .def("has_edge", &Graph::has_edge)
        .def("adjacency_matrix",
             [](const Graph& g) { return g.adjacency_matrix().cast<double>().eval(); })
        .def("laplacian_matrix", &Graph::laplacian_matrix)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.n) + ", m=" + std::to_string(g.edge_count()) + ")";
        });

    py::class_<LeaderPartition>(m, "LeaderPartition")
        .def_readonly("leaders", &LeaderPartition::leaders)
        .def_readonly("followers", &LeaderPartition::followers)
        .def_readonly("beta", &LeaderPartition::beta)
        .def_readonly("boundary_size", &LeaderPartition::boundary_size);

    py::class_<GroundedSystem>(m, "GroundedSystem")
        .def_readonly("grounded_laplacian", &GroundedSystem::grounded_laplacian)
        .def_readonly("coupling", &GroundedSystem::coupling)
        .def_readonly("follower_laplacian", &GroundedSystem::follower_laplacian)
        .def_readonly("leader_count_diag", &GroundedSystem::leader_count_diag)
        .def("dim", &GroundedSystem::dim);

    py::class_<SpectralSummary>(m, "SpectralSummary")
        .def_readonly("lambda_min", &SpectralSummary::lambda_min)
        .def_readonly("lambda_max", &SpectralSummary::lambda_max)
        .def_readonly("perron_vector", &SpectralSummary::perron_vector)
        .def_readonly("x_min", &SpectralSummary::x_min);

    // graph construction and fixtures
    m.def("build_graph",
          [](int n, const std::vector<std::pair<int, int>>& edges) {
              return build_graph(n, edges);
          },
          py::arg("n"), py::arg("edges"));
    m.def("load_graph", &load_graph, py::arg("path"));
    m.def("save_graph", &save_graph, py::arg("path"), py::arg("graph"));
    m.def("path_graph", &path_graph);
    m.def("cycle_graph", &cycle_graph);
    m.def("star_graph", &star_graph);
    m.def("complete_graph", &complete_graph);
    m.def("complete_bipartite", &complete_bipartite);
    m.def("broom_tree", &broom_tree, py::arg("n"), py::arg("delta"));
    m.def("broom_pair", &broom_pair);
    m.def("is_connected", &is_connected);
    m.def("edge_boundary", &edge_boundary, py::arg("graph"), py::arg("vertices"));

    m.def("ground", &ground, py::arg("graph"), py::arg("leaders"));
    m.def("spectral_summary",
          [](const GroundedSystem& gs) { return spectral_summary(as_symmetric(gs.grounded_laplacian)); });

    // dense symmetric kernels on numpy arrays
    m.def("eigendecompose", [](const Eigen::MatrixXd& a) {
        EigenDecomposition ed = eigendecompose(as_symmetric(a));
        return py::make_tuple(ed.eigenvalues, ed.eigenvectors);
    });
    m.def("smallest_eigenpair", [](const Eigen::MatrixXd& a) {
        EigenPair p = smallest_eigenpair(as_symmetric(a));
        return py::make_tuple(p.value, p.vector);
    });
    m.def("largest_eigenvalue",
          [](const Eigen::MatrixXd& a) { return largest_eigenvalue(as_symmetric(a)); });
    m.def("cholesky_trace_inverse",
          [](const Eigen::MatrixXd& a) { return cholesky_trace_inverse(as_symmetric(a)); });
    m.def("inverse_row_sums",
          [](const Eigen::MatrixXd& a) { return inverse_row_sums(as_symmetric(a)); });

    // reports come back as plain dicts
    m.def("analyze",
          [](const Graph& g, const std::vector<int>& leaders, int subset_budget,
             std::uint64_t seed) { return json_to_py(report_to_json(analyze(g, leaders, subset_budget, seed))); },
          py::arg("graph"), py::arg("leaders"), py::arg("subset_budget") = 2000,
          py::arg("seed") = 0);

    m.def("exhaustive_ranking",
          [](const Graph& g, int cap) { return json_to_py(ranking_to_json(exhaustive_ranking(g, cap))); },
          py::arg("graph"), py::arg("cap") = 1500);

    m.def("resistance_data",
          [](const Graph& g, int reference) {
              ResistanceData rd = resistance_data(g, reference);
              return py::make_tuple(rd.pairwise, rd.effective);
          },
          py::arg("graph"), py::arg("reference") = 0);

    m.def("delay_dominance_certificate", &delay_dominance_certificate, py::arg("graph"),
          py::arg("vertex"));
    m.def("simultaneous_certificate", [](const Graph& g, int k) {
        SimultaneousCertificate c = simultaneous_certificate(g, k);
        py::dict d;
        d["holds"] = c.holds;
        d["x_min"] = c.xmin;
        d["margin"] = c.margin;
        d["reason"] = c.reason;
        return d;
    });
    m.def("resistance_trace_identity_check", &resistance_trace_identity_check, py::arg("graph"),
          py::arg("i"), py::arg("k"));

    m.def("design_optimal_network", [](int n_followers, int n_leaders, int beta) {
        DesignedNetwork d = design_optimal_network(n_followers, n_leaders, beta);
        return py::make_tuple(d.graph, d.leaders);
    });

    // random graphs and experiments
    m.def("gen_er",
          [](int n, double p, std::uint64_t seed) { return gen_er({n, p, seed}); },
          py::arg("n"), py::arg("p"), py::arg("seed") = 0);
    m.def("gen_rrg",
          [](int n, int d, std::uint64_t seed) { return gen_rrg({n, d, seed}); },
          py::arg("n"), py::arg("d"), py::arg("seed") = 0);
    m.def("rrg_delay_bounds_check",
          [](int n, int d, std::uint64_t seed, int leaders) {
              RrgDelayCheck c = rrg_delay_bounds_check({n, d, seed}, leaders);
              py::dict out;
              out["lower_ok"] = c.lower_ok;
              out["upper_ok"] = c.upper_ok;
              out["tau_hat"] = c.tau_hat;
              return out;
          },
          py::arg("n"), py::arg("d"), py::arg("seed") = 0, py::arg("leaders") = 1);

    m.def("run_experiment", [](const py::dict& manifest) {
        const std::string dumped =
            py::module_::import("json").attr("dumps")(manifest).cast<std::string>();
        ExperimentOutput out = run_experiment(parse_manifest(nlohmann::json::parse(dumped)));
        py::list rows;
        for (const auto& r : out.rows)
            rows.append(py::make_tuple(r.n, r.trial, r.h2, r.hinf, r.tau_hat, r.target, r.ratio));
        py::list summary;
        for (const auto& s : out.summary) {
            py::dict d;
            d["n"] = s.n;
            d["mean"] = s.mean;
            d["stddev"] = s.stddev;
            d["target"] = s.target;
            d["relative_error"] = s.relative_error;
            d["redraws"] = s.redraws;
            summary.append(d);
        }
        py::dict result;
        result["rows"] = rows;
        result["summary"] = summary;
        return result;
    });

    // time-domain simulation
    m.def("equilibrium", &equilibrium, py::arg("system"), py::arg("leader_states"));
    m.def(
        "simulate",
        [](const GroundedSystem& gs, double dt, double horizon, double tau,
           const Eigen::VectorXd& leader_states, py::object x0, double noise_std,
           std::uint64_t seed, int stride) {
            SimConfig cfg;
            cfg.dt = dt;
            cfg.horizon = horizon;
            cfg.tau = tau;
            cfg.leader_states = leader_states;
            if (!x0.is_none()) cfg.initial_followers = x0.cast<Eigen::VectorXd>();
            if (noise_std > 0) {
                cfg.disturbance = DisturbanceKind::white_noise;
                cfg.noise_std = noise_std;
                cfg.noise_seed = seed;
            }
            cfg.record_stride = stride;
            Trajectory t = simulate(gs, cfg);
            py::dict out;
            out["classification"] = class_name(t.classification);
            out["time"] = t.time;
            out["states"] = t.states;
            out["equilibrium"] = t.equilibrium;
            out["initial_error"] = t.initial_error;
            out["terminal_error"] = t.terminal_error;
            out["horizon_extended"] = t.horizon_extended;
            return out;
        },
        py::arg("system"), py::arg("dt"), py::arg("horizon"), py::arg("tau") = 0.0,
        py::arg("leader_states"), py::arg("x0") = py::none(), py::arg("noise_std") = 0.0,
        py::arg("seed") = 0, py::arg("stride") = 1);

    m.def("bracket_threshold", [](const GroundedSystem& gs, double tol) {
        BracketResult b = bracket_threshold(gs, tol);
        py::dict out;
        out["tau_lo"] = b.tau_lo;
        out["tau_hi"] = b.tau_hi;
        out["midpoint"] = b.midpoint;
        out["analytic_threshold"] = b.analytic;
        out["probes"] = b.probes;
        out["inconclusive"] = b.inconclusive;
        return out;
    }, py::arg("system"), py::arg("tol") = 0.02);

    m.def("disturbance_energy_check", &disturbance_energy_check, py::arg("system"),
          py::arg("trials"), py::arg("noise_std"), py::arg("horizon"), py::arg("seed") = 0);
}
