#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gspec/graph.hpp"
#include "gspec/leader_select.hpp"
#include "gspec/random_graphs.hpp"
#include "gspec/robustness.hpp"

namespace gspec {

/// Parse failure for any of the text inputs; carries a 1-based line number
/// when one applies.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, int line = 0)
        : std::runtime_error(line > 0 ? what + " (line " + std::to_string(line) + ")" : what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Edge-list text format: first non-comment line "n m", then m lines "u v"
/// (0-based). Lines starting with '#' are comments.
Graph parse_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

/// JSON graph format: {"n": ..., "edges": [[u, v], ...]}.
Graph graph_from_json(const nlohmann::json& j);
nlohmann::json graph_to_json(const Graph& g);

/// Loads either format by file extension (.json vs anything else).
Graph load_graph(const std::string& path);
void save_graph(const std::string& path, const Graph& g);

nlohmann::json report_to_json(const AnalysisReport& r);
nlohmann::json ranking_to_json(const LeaderRanking& r);
void write_ranking_csv(std::ostream& out, const LeaderRanking& r,
                       const std::vector<std::string>& flags = {});

ExperimentManifest parse_manifest(const nlohmann::json& j);
ExperimentManifest load_manifest(const std::string& path);
void write_experiment_csv(std::ostream& out, const ExperimentOutput& o);

} // namespace gspec
