#include "mgs/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "mgs/error.hpp"

namespace mgs {

using nlohmann::json;

namespace {

json graph_json(const Graph& g) {
    json edges = json::array();
    for (auto [u, v] : g.edges()) edges.push_back({u, v});
    return json{{"n", g.size()}, {"edges", std::move(edges)}};
}

json parse(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, e.what());
    }
}

std::size_t node_count(const json& j, std::string_view where) {
    if (!j.is_object() || !j.contains("n") || !j["n"].is_number_unsigned() || j["n"].get<std::size_t>() == 0) {
        throw Error(ErrorKind::SchemaError, std::string(where) + ": \"n\" must be a positive integer");
    }
    return j["n"].get<std::size_t>();
}

Graph graph_of(const json& j, std::string_view where) {
    const std::size_t n = node_count(j, where);
    if (!j.contains("edges") || !j["edges"].is_array()) {
        throw Error(ErrorKind::SchemaError, std::string(where) + ": \"edges\" must be an array");
    }
    EdgeList edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
            throw Error(ErrorKind::SchemaError, std::string(where) + ": edge " + e.dump() +
                                                    " is not a pair of node IDs");
        }
        const auto u = e[0].get<std::uint64_t>();
        const auto v = e[1].get<std::uint64_t>();
        if (u >= n || v >= n || u == v) {
            throw Error(ErrorKind::SchemaError, std::string(where) + ": invalid edge " + e.dump());
        }
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
    return make_graph(n, edges);
}

} // namespace

std::string graph_to_json(const Graph& g) { return graph_json(g).dump() + "\n"; }

Graph graph_from_json(std::string_view text) { return graph_of(parse(text), "graph"); }

std::string dynamic_to_json(const DynamicGraph& dg) {
    json j;
    j["n"] = dg.size();
    if (dg.tau().is_unbounded()) {
        j["tau"] = "inf";
    } else {
        j["tau"] = dg.tau().rounds();
    }
    j["model"] = std::string(to_string(dg.model()));
    j["seed"] = dg.seed();
    if (dg.model() == DynamicsModel::Explicit) {
        j["base"] = nullptr;
        json frames = json::array();
        for (const auto& f : dg.frames()) frames.push_back(graph_json(*f));
        j["frames"] = std::move(frames);
    } else {
        j["base"] = graph_json(*dg.base());
        j["frames"] = nullptr;
    }
    return j.dump() + "\n";
}

namespace {

DynamicGraph dynamic_of(const json& j) {
    const std::size_t n = node_count(j, "dynamic");

    Stability tau;
    const auto& t = j.contains("tau") ? j["tau"] : json();
    if (t.is_string() && t.get<std::string>() == "inf") {
        tau = Stability::unbounded();
    } else if (t.is_number_unsigned() && t.get<std::uint64_t>() >= 1 &&
               t.get<std::uint64_t>() <= UINT32_MAX) {
        tau = Stability::every(t.get<std::uint32_t>());
    } else {
        throw Error(ErrorKind::SchemaError, "dynamic: \"tau\" must be a positive integer or \"inf\"");
    }

    if (!j.contains("model") || !j["model"].is_string()) {
        throw Error(ErrorKind::SchemaError, "dynamic: \"model\" must be a string");
    }
    const auto model = parse_dynamics(j["model"].get<std::string>());
    if (!model) throw Error(ErrorKind::SchemaError, "dynamic: unknown model " + j["model"].dump());

    std::uint64_t seed = 0;
    if (j.contains("seed") && !j["seed"].is_null()) {
        if (!j["seed"].is_number_unsigned()) {
            throw Error(ErrorKind::SchemaError, "dynamic: \"seed\" must be a non-negative integer");
        }
        seed = j["seed"].get<std::uint64_t>();
    }

    if (*model == DynamicsModel::Explicit) {
        if (!j.contains("frames") || !j["frames"].is_array() || j["frames"].empty()) {
            throw Error(ErrorKind::SchemaError, "dynamic: explicit model needs a non-empty \"frames\"");
        }
        std::vector<Graph> frames;
        for (std::size_t i = 0; i < j["frames"].size(); ++i) {
            const auto where = "frame " + std::to_string(i + 1);
            if (node_count(j["frames"][i], where) != n) {
                throw Error(ErrorKind::SchemaError, where + ": vertex count differs from \"n\"");
            }
            try {
                frames.push_back(graph_of(j["frames"][i], where));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::DisconnectedGraph) throw;
                throw Error(ErrorKind::DisconnectedFrame, where + " is not connected");
            }
        }
        return DynamicGraph::explicit_frames(std::move(frames), tau);
    }

    if (!j.contains("base") || !j["base"].is_object()) {
        throw Error(ErrorKind::SchemaError, "dynamic: static and permute models need a \"base\" graph");
    }
    if (node_count(j["base"], "base") != n) {
        throw Error(ErrorKind::SchemaError, "base: vertex count differs from \"n\"");
    }
    return DynamicGraph::generated(graph_of(j["base"], "base"), tau, *model, seed);
}

} // namespace

DynamicGraph dynamic_from_json(std::string_view text) { return dynamic_of(parse(text)); }

Topology topology_from_json(std::string_view text) {
    const json j = parse(text);
    if (j.is_object() && j.contains("tau")) return dynamic_of(j);
    return graph_of(j, "graph");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

} // namespace mgs
