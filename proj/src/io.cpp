#include "gspec/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace gspec {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// inf/-inf/nan are not representable in JSON; callers pair these with flags
json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

} // namespace

Graph parse_edge_list(std::istream& in) {
    std::string line;
    int line_no = 0;
    long n = -1, m = -1;
    std::vector<std::pair<int, int>> edges;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (n < 0) {
            if (!(ls >> n >> m) || n < 0 || m < 0)
                throw parse_error("expected header 'n m'", line_no);
            continue;
        }
        long u, v;
        if (!(ls >> u >> v)) throw parse_error("expected edge 'u v'", line_no);
        if (static_cast<long>(edges.size()) >= m)
            throw parse_error("more edges than declared in header", line_no);
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw parse_error("edge endpoint out of range", line_no);
        edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    }
    if (n < 0) throw parse_error("empty edge-list input");
    if (static_cast<long>(edges.size()) != m)
        throw parse_error("declared " + std::to_string(m) + " edges but found " +
                          std::to_string(edges.size()));
    try {
        return build_graph(static_cast<int>(n), edges);
    } catch (const graph_error& e) {
        throw parse_error(e.what());
    }
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << g.n << ' ' << g.edge_count() << '\n';
    for (const auto& [u, v] : g.edges) out << u << ' ' << v << '\n';
}

Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw parse_error("graph JSON needs fields 'n' and 'edges'");
    if (!j["n"].is_number_integer()) throw parse_error("'n' must be an integer");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw parse_error("each edge must be a pair of integers");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    try {
        return build_graph(j["n"].get<int>(), edges);
    } catch (const graph_error& e) {
        throw parse_error(e.what());
    }
}

json graph_to_json(const Graph& g) {
    json edges = json::array();
    for (const auto& [u, v] : g.edges) edges.push_back({u, v});
    return json{{"n", g.n}, {"edges", edges}};
}

namespace {

bool has_json_extension(const std::string& path) {
    return path.size() >= 5 && path.substr(path.size() - 5) == ".json";
}

} // namespace

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open graph file: " + path);
    if (has_json_extension(path)) {
        json j;
        try {
            in >> j;
        } catch (const json::parse_error& e) {
            throw parse_error(std::string("invalid JSON: ") + e.what());
        }
        return graph_from_json(j);
    }
    return parse_edge_list(in);
}

void save_graph(const std::string& path, const Graph& g) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write graph file: " + path);
    if (has_json_extension(path))
        out << graph_to_json(g).dump(2) << '\n';
    else
        write_edge_list(out, g);
}

json report_to_json(const AnalysisReport& r) {
    const Lambda1Bounds& b1 = r.lambda1_bounds;
    const LambdaMaxBounds& bm = r.lambda_max_bounds;
    const XminCertificate& xc = r.xmin_certificate;
    const RobustnessReport& rr = r.robustness;
    json j;
    j["n"] = r.n;
    j["leader_count"] = r.leader_count;
    j["follower_count"] = r.follower_count;
    j["boundary_size"] = r.boundary_size;
    j["lambda_min"] = r.lambda_min;
    j["lambda_max"] = r.lambda_max;
    j["x_min"] = r.x_min;
    j["lambda1_bounds"] = {
        {"lower_beta_min", b1.lower_beta_min},
        {"lower_boundary", b1.lower_boundary},
        {"upper_isoperimetric", b1.upper_isoperimetric},
        {"upper_boundary", b1.upper_boundary},
        {"upper_beta_max", b1.upper_beta_max},
        {"isoperimetric_exact", b1.isoperimetric_exact},
    };
    j["lambda_max_bounds"] = {
        {"lower_dmax", bm.lower_dmax},
        {"upper_M", bm.upper_M},
        {"followers_independent", bm.followers_independent},
    };
    j["certificates"] = {
        {"f_dominating_level", r.f_dominating_level},
        {"beta_uniform", r.beta_uniform},
        {"xmin_lower_bound", finite_or_null(xc.value)},
        {"xmin_bound_vacuous", xc.vacuous},
        {"follower_subgraph_connected", xc.follower_subgraph_connected},
        {"follower_lambda2", xc.follower_lambda2},
    };
    j["robustness"] = {
        {"h2_disorder", rr.h2_disorder},
        {"h2_norm", rr.h2_norm},
        {"hinf_disorder", rr.hinf_disorder},
        {"delay_threshold", rr.delay_threshold},
        {"hinf_lower_beta", rr.hinf_lower_beta},
        {"hinf_lower_boundary", rr.hinf_lower_boundary},
        {"hinf_upper_beta", rr.hinf_upper_beta ? json(*rr.hinf_upper_beta) : json(nullptr)},
        {"hinf_upper_unbounded", !rr.hinf_upper_beta.has_value()},
        {"delay_necessary", rr.delay_necessary},
        {"delay_sufficient", rr.delay_sufficient},
    };
    return j;
}

json ranking_to_json(const LeaderRanking& r) {
    json scores = json::array();
    for (const auto& s : r.scores)
        scores.push_back({{"vertex", s.vertex},
                          {"grounding_centrality", s.grounding_centrality},
                          {"h2_cost", s.h2_cost},
                          {"delay_threshold", s.delay_threshold}});
    return json{{"scores", scores},
                {"best_h2", r.best_h2},
                {"best_hinf", r.best_hinf},
                {"best_delay", r.best_delay}};
}

void write_ranking_csv(std::ostream& out, const LeaderRanking& r,
                       const std::vector<std::string>& flags) {
    out << "vertex,grounding_centrality,h2_cost,delay_threshold,flags\n";
    for (const auto& s : r.scores) {
        std::string flag;
        if (s.vertex == r.best_hinf) flag += "best_hinf|";
        if (s.vertex == r.best_h2) flag += "best_h2|";
        if (s.vertex == r.best_delay) flag += "best_delay|";
        if (static_cast<std::size_t>(s.vertex) < flags.size() && !flags[s.vertex].empty())
            flag += flags[s.vertex] + "|";
        if (!flag.empty()) flag.pop_back();
        out << s.vertex << ',' << fmt(s.grounding_centrality) << ',' << fmt(s.h2_cost) << ','
            << fmt(s.delay_threshold) << ',' << flag << '\n';
    }
}

ExperimentManifest parse_manifest(const json& j) {
    ExperimentManifest m;
    if (!j.is_object()) throw parse_error("manifest must be a JSON object");
    const std::string kind = j.value("kind", "");
    if (kind == "er")
        m.kind = GraphKind::er;
    else if (kind == "rrg")
        m.kind = GraphKind::rrg;
    else
        throw parse_error("manifest 'kind' must be \"er\" or \"rrg\"");
    m.metric = j.value("metric", "h2");
    if (m.metric != "h2" && m.metric != "hinf" && m.metric != "delay")
        throw parse_error("manifest 'metric' must be h2, hinf or delay");
    if (m.metric == "delay" && m.kind != GraphKind::er)
        throw parse_error("the delay-ratio metric needs an ER manifest");
    if (!j.contains("sizes") || !j["sizes"].is_array() || j["sizes"].empty())
        throw parse_error("manifest needs a nonempty 'sizes' array");
    for (const auto& s : j["sizes"]) {
        if (!s.is_number_integer() || s.get<int>() < 2)
            throw parse_error("each size must be an integer >= 2");
        m.sizes.push_back(s.get<int>());
    }
    if (m.kind == GraphKind::er) {
        if (!j.contains("p")) throw parse_error("ER manifest needs 'p'");
        m.p = j["p"].get<double>();
        if (!(m.p > 0.0 && m.p <= 1.0)) throw parse_error("'p' must be in (0, 1]");
    } else {
        if (!j.contains("d")) throw parse_error("RRG manifest needs 'd'");
        m.d = j["d"].get<int>();
        if (m.d < 1) throw parse_error("'d' must be >= 1");
    }
    m.leader_count = j.value("leaders", 1);
    if (m.leader_count < 1) throw parse_error("'leaders' must be >= 1");
    m.trials = j.value("trials", 10);
    if (m.trials < 1) throw parse_error("'trials' must be >= 1");
    m.base_seed_set = j.contains("base_seed");
    m.base_seed = j.value("base_seed", static_cast<std::uint64_t>(42));
    return m;
}

ExperimentManifest load_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open manifest: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw parse_error(std::string("invalid JSON: ") + e.what());
    }
    return parse_manifest(j);
}

void write_experiment_csv(std::ostream& out, const ExperimentOutput& o) {
    out << "n,trial,h2,hinf,tau_hat,target,ratio\n";
    for (const auto& row : o.rows)
        out << row.n << ',' << row.trial << ',' << fmt(row.h2) << ',' << fmt(row.hinf) << ','
            << fmt(row.tau_hat) << ',' << fmt(row.target) << ',' << fmt(row.ratio) << '\n';
}

} // namespace gspec
