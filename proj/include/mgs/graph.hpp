#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mgs {

using NodeId = std::uint32_t;
using EdgeList = std::vector<std::pair<NodeId, NodeId>>;

// Connected undirected simple graph on nodes 0..n-1, stored as CSR with
// each neighbor list sorted ascending.
class Graph {
public:
    Graph() = default;

    std::size_t size() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size() / 2; }

    std::span<const NodeId> neighbors(NodeId u) const {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }
    std::size_t degree(NodeId u) const { return offsets_[u + 1] - offsets_[u]; }
    std::size_t max_degree() const noexcept { return max_degree_; }
    std::size_t min_degree() const noexcept { return min_degree_; }

    bool has_edge(NodeId u, NodeId v) const;

    // Sorted (u < v, lexicographic).
    EdgeList edges() const;

    // Node u of this graph becomes node perm[u] of the result.
    Graph relabeled(std::span<const NodeId> perm) const;

    bool operator==(const Graph&) const = default;

private:
    friend Graph make_graph(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

    std::vector<std::size_t> offsets_;
    std::vector<NodeId> targets_;
    std::size_t max_degree_ = 0;
    std::size_t min_degree_ = 0;
};

// Throws InvalidEdge for out-of-range or self-loop edges and DisconnectedGraph
// when the result would not be connected. Duplicate edges collapse.
Graph make_graph(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges);

inline Graph make_graph(std::size_t n, const EdgeList& edges) {
    return make_graph(n, std::span<const std::pair<NodeId, NodeId>>(edges));
}

// Centers 0..delta-1 form a clique; points delta..delta+Delta-1 each connect
// to every center and nothing else.
Graph gen_gstar(std::size_t delta, std::size_t Delta);

// L = 0..n/2-1 is a clique, R = n/2..n-1 is independent, i is matched with
// i+n/2, and the hub L* = 0..floor(sqrt n)-1 is joined to every node of R.
Graph gen_badgraph(std::size_t n);

std::size_t isqrt(std::size_t n);

enum class Family { Complete, Cycle, Path, Gnp, Hypercube, GStar, BadGraph };

std::optional<Family> parse_family(std::string_view name);
std::string_view to_string(Family family);

struct FamilyParams {
    std::size_t n = 0;
    std::size_t delta = 0;  // gstar only
    std::size_t Delta = 0;  // gstar only
    double p = 0.0;         // gnp only
    std::uint64_t seed = 0; // gnp only
};

// Number of G(n,p) draws before giving up on a connected sample.
inline constexpr int kGnpRetryCap = 100;

Graph gen_family(Family family, const FamilyParams& params);

// Stability parameter; unbounded means the topology never changes.
class Stability {
public:
    static Stability unbounded() { return Stability{}; }
    static Stability every(std::uint32_t rounds);

    bool is_unbounded() const noexcept { return !rounds_.has_value(); }
    std::uint32_t rounds() const { return rounds_.value(); }

    // Zero-based interval containing round r (r >= 1).
    std::uint64_t interval_of(std::uint64_t round) const {
        return is_unbounded() ? 0 : (round - 1) / *rounds_;
    }

    bool operator==(const Stability&) const = default;

private:
    std::optional<std::uint32_t> rounds_;
};

std::string to_string(Stability tau);

enum class DynamicsModel { Static, Permute, Explicit };

std::optional<DynamicsModel> parse_dynamics(std::string_view name);
std::string_view to_string(DynamicsModel model);

// Tau-stable sequence of graphs on a fixed vertex set. Immutable; frames of
// the permute model are materialized on request, so sharing one instance
// across threads is safe.
class DynamicGraph {
public:
    // Static or permute dynamics over base. The first interval of the permute
    // model is base itself; every later interval is an independent uniform
    // relabeling drawn from (seed, interval index).
    static DynamicGraph generated(Graph base, Stability tau, DynamicsModel model,
                                  std::uint64_t seed = 0);

    // Explicit frames for rounds 1..frames.size(); the last frame persists
    // afterwards. Throws StabilityViolation or DisconnectedFrame.
    static DynamicGraph explicit_frames(std::vector<Graph> frames, Stability tau);

    std::size_t size() const noexcept { return n_; }
    Stability tau() const noexcept { return tau_; }
    DynamicsModel model() const noexcept { return model_; }
    std::uint64_t seed() const noexcept { return seed_; }

    // Null for the explicit model.
    const Graph* base() const noexcept { return base_.get(); }
    std::span<const std::shared_ptr<const Graph>> frames() const noexcept { return frames_; }

    // Topology during round r (r >= 1).
    std::shared_ptr<const Graph> frame(std::uint64_t round) const;

private:
    DynamicGraph() = default;

    std::size_t n_ = 0;
    Stability tau_;
    DynamicsModel model_ = DynamicsModel::Static;
    std::uint64_t seed_ = 0;
    std::shared_ptr<const Graph> base_;
    std::vector<std::shared_ptr<const Graph>> frames_;
};

inline DynamicGraph make_dynamic(Graph base, Stability tau, DynamicsModel model,
                                 std::uint64_t seed = 0) {
    return DynamicGraph::generated(std::move(base), tau, model, seed);
}

// True when every pair of rounds in 1..horizon that share a tau-interval sees
// the same frame.
bool is_tau_stable(const DynamicGraph& dg, std::uint64_t horizon);

} // namespace mgs
