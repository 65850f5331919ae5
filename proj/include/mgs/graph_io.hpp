#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "mgs/graph.hpp"

namespace mgs {

// Graph file: {"n": <int>, "edges": [[u,v], ...]} with edges sorted u < v.
std::string graph_to_json(const Graph& g);
Graph graph_from_json(std::string_view text);

// Dynamic file: {"n", "tau": <int|"inf">, "model", "seed", "base", "frames"}.
// base is null for explicit dynamics, frames is null otherwise.
std::string dynamic_to_json(const DynamicGraph& dg);
DynamicGraph dynamic_from_json(std::string_view text);

// Either file kind; a top-level "tau" key marks a dynamic file.
using Topology = std::variant<Graph, DynamicGraph>;
Topology topology_from_json(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

inline Graph read_graph(const std::filesystem::path& path) {
    return graph_from_json(read_text_file(path));
}
inline void write_graph(const std::filesystem::path& path, const Graph& g) {
    write_text_file(path, graph_to_json(g));
}
inline DynamicGraph read_dynamic(const std::filesystem::path& path) {
    return dynamic_from_json(read_text_file(path));
}
inline void write_dynamic(const std::filesystem::path& path, const DynamicGraph& dg) {
    write_text_file(path, dynamic_to_json(dg));
}

} // namespace mgs
