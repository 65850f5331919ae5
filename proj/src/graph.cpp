#include "mgs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "mgs/error.hpp"
#include "mgs/rng.hpp"

namespace mgs {

namespace {

bool connected(const std::vector<std::size_t>& offsets, const std::vector<NodeId>& targets) {
    const std::size_t n = offsets.size() - 1;
    if (n <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (std::size_t i = offsets[u]; i < offsets[u + 1]; ++i) {
            NodeId v = targets[i];
            if (!seen[v]) {
                seen[v] = 1;
                ++reached;
                stack.push_back(v);
            }
        }
    }
    return reached == n;
}

} // namespace

Graph make_graph(std::size_t n, std::span<const std::pair<NodeId, NodeId>> edges) {
    if (n == 0) throw Error(ErrorKind::InvalidParams, "graph needs at least one node");

    std::vector<std::pair<NodeId, NodeId>> arcs;
    arcs.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n) {
            throw Error(ErrorKind::InvalidEdge, "edge (" + std::to_string(u) + "," +
                                                    std::to_string(v) + ") out of range");
        }
        if (u == v) throw Error(ErrorKind::InvalidEdge, "self-loop at " + std::to_string(u));
        arcs.emplace_back(u, v);
        arcs.emplace_back(v, u);
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (auto [u, v] : arcs) ++g.offsets_[u + 1];
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    g.targets_.reserve(arcs.size());
    for (auto [u, v] : arcs) g.targets_.push_back(v);

    if (!connected(g.offsets_, g.targets_)) {
        throw Error(ErrorKind::DisconnectedGraph, "graph on " + std::to_string(n) +
                                                      " nodes is not connected");
    }

    g.max_degree_ = 0;
    g.min_degree_ = n == 1 ? 0 : SIZE_MAX;
    for (NodeId u = 0; u < n; ++u) {
        g.max_degree_ = std::max(g.max_degree_, g.degree(u));
        g.min_degree_ = std::min(g.min_degree_, g.degree(u));
    }
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u >= size() || v >= size()) return false;
    auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

EdgeList Graph::edges() const {
    EdgeList out;
    out.reserve(edge_count());
    for (NodeId u = 0; u < size(); ++u) {
        for (NodeId v : neighbors(u)) {
            if (u < v) out.emplace_back(u, v);
        }
    }
    return out;
}

Graph Graph::relabeled(std::span<const NodeId> perm) const {
    const std::size_t n = size();
    if (perm.size() != n) throw Error(ErrorKind::InvalidParams, "permutation size mismatch");

    std::vector<NodeId> inverse(n);
    for (NodeId u = 0; u < n; ++u) inverse[perm[u]] = u;

    Graph g;
    g.offsets_.assign(n + 1, 0);
    for (NodeId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree(inverse[v]);
    g.targets_.resize(targets_.size());
    for (NodeId v = 0; v < n; ++v) {
        auto out = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto end = out;
        for (NodeId w : neighbors(inverse[v])) *end++ = perm[w];
        std::sort(out, end);
    }
    g.max_degree_ = max_degree_;
    g.min_degree_ = min_degree_;
    return g;
}

std::size_t isqrt(std::size_t n) {
    auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

Graph gen_gstar(std::size_t delta, std::size_t Delta) {
    if (delta < 1 || delta > Delta) {
        throw Error(ErrorKind::InvalidParams, "gstar needs 1 <= delta <= Delta");
    }
    EdgeList edges;
    for (NodeId c = 0; c < delta; ++c) {
        for (NodeId d = c + 1; d < delta; ++d) edges.emplace_back(c, d);
    }
    for (std::size_t p = delta; p < delta + Delta; ++p) {
        for (NodeId c = 0; c < delta; ++c) edges.emplace_back(c, static_cast<NodeId>(p));
    }
    return make_graph(delta + Delta, edges);
}

Graph gen_badgraph(std::size_t n) {
    if (n < 16 || n % 2 != 0) {
        throw Error(ErrorKind::InvalidParams, "badgraph needs an even n >= 16");
    }
    const auto half = static_cast<NodeId>(n / 2);
    const auto hub = static_cast<NodeId>(isqrt(n));
    EdgeList edges;
    edges.reserve(static_cast<std::size_t>(half) * half / 2 + half + hub * half);
    for (NodeId u = 0; u < half; ++u) {
        for (NodeId v = u + 1; v < half; ++v) edges.emplace_back(u, v);
        edges.emplace_back(u, u + half);
    }
    for (NodeId h = 0; h < hub; ++h) {
        for (NodeId r = half; r < n; ++r) {
            if (r != h + half) edges.emplace_back(h, r);
        }
    }
    return make_graph(n, edges);
}

std::optional<Family> parse_family(std::string_view name) {
    if (name == "complete") return Family::Complete;
    if (name == "cycle") return Family::Cycle;
    if (name == "path") return Family::Path;
    if (name == "gnp") return Family::Gnp;
    if (name == "hypercube") return Family::Hypercube;
    if (name == "gstar") return Family::GStar;
    if (name == "badgraph") return Family::BadGraph;
    return std::nullopt;
}

std::string_view to_string(Family family) {
    switch (family) {
    case Family::Complete: return "complete";
    case Family::Cycle: return "cycle";
    case Family::Path: return "path";
    case Family::Gnp: return "gnp";
    case Family::Hypercube: return "hypercube";
    case Family::GStar: return "gstar";
    case Family::BadGraph: return "badgraph";
    }
    return "unknown";
}

namespace {

Graph gen_gnp(std::size_t n, double p, std::uint64_t seed) {
    if (n < 1 || !(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::InvalidParams, "gnp needs n >= 1 and p in [0,1]");
    }
    Rng rng(seed);
    for (int attempt = 0; attempt < kGnpRetryCap; ++attempt) {
        EdgeList edges;
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) {
                if (rng.unit() < p) edges.emplace_back(u, v);
            }
        }
        try {
            return make_graph(n, edges);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DisconnectedGraph) throw;
        }
    }
    throw Error(ErrorKind::GenerationFailed,
                "no connected G(n,p) sample after " + std::to_string(kGnpRetryCap) + " draws");
}

} // namespace

Graph gen_family(Family family, const FamilyParams& params) {
    const std::size_t n = params.n;
    EdgeList edges;
    switch (family) {
    case Family::Complete:
        if (n < 1) throw Error(ErrorKind::InvalidParams, "complete needs n >= 1");
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
        }
        return make_graph(n, edges);
    case Family::Cycle:
        if (n < 3) throw Error(ErrorKind::InvalidParams, "cycle needs n >= 3");
        for (NodeId u = 0; u < n; ++u) edges.emplace_back(u, static_cast<NodeId>((u + 1) % n));
        return make_graph(n, edges);
    case Family::Path:
        if (n < 1) throw Error(ErrorKind::InvalidParams, "path needs n >= 1");
        for (NodeId u = 0; u + 1 < n; ++u) edges.emplace_back(u, u + 1);
        return make_graph(n, edges);
    case Family::Gnp:
        return gen_gnp(n, params.p, params.seed);
    case Family::Hypercube: {
        if (n < 1 || (n & (n - 1)) != 0) {
            throw Error(ErrorKind::InvalidParams, "hypercube needs n a power of two");
        }
        for (NodeId u = 0; u < n; ++u) {
            for (NodeId bit = 1; bit < n; bit <<= 1) {
                if ((u & bit) == 0) edges.emplace_back(u, u | bit);
            }
        }
        return make_graph(n, edges);
    }
    case Family::GStar:
        return gen_gstar(params.delta, params.Delta);
    case Family::BadGraph:
        return gen_badgraph(n);
    }
    throw Error(ErrorKind::InvalidParams, "unknown family");
}

Stability Stability::every(std::uint32_t rounds) {
    if (rounds == 0) throw Error(ErrorKind::InvalidParams, "tau must be >= 1");
    Stability s;
    s.rounds_ = rounds;
    return s;
}

std::string to_string(Stability tau) {
    return tau.is_unbounded() ? std::string("inf") : std::to_string(tau.rounds());
}

std::optional<DynamicsModel> parse_dynamics(std::string_view name) {
    if (name == "static") return DynamicsModel::Static;
    if (name == "permute") return DynamicsModel::Permute;
    if (name == "explicit") return DynamicsModel::Explicit;
    return std::nullopt;
}

std::string_view to_string(DynamicsModel model) {
    switch (model) {
    case DynamicsModel::Static: return "static";
    case DynamicsModel::Permute: return "permute";
    case DynamicsModel::Explicit: return "explicit";
    }
    return "unknown";
}

DynamicGraph DynamicGraph::generated(Graph base, Stability tau, DynamicsModel model,
                                     std::uint64_t seed) {
    if (model == DynamicsModel::Explicit) {
        throw Error(ErrorKind::InvalidParams, "explicit dynamics need a frame list");
    }
    DynamicGraph dg;
    dg.n_ = base.size();
    dg.tau_ = tau;
    dg.model_ = model;
    dg.seed_ = seed;
    dg.base_ = std::make_shared<const Graph>(std::move(base));
    return dg;
}

DynamicGraph DynamicGraph::explicit_frames(std::vector<Graph> frames, Stability tau) {
    if (frames.empty()) throw Error(ErrorKind::InvalidParams, "explicit dynamics need frames");
    DynamicGraph dg;
    dg.n_ = frames.front().size();
    dg.tau_ = tau;
    dg.model_ = DynamicsModel::Explicit;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (frames[i].size() != dg.n_) {
            throw Error(ErrorKind::InvalidParams, "frame " + std::to_string(i + 1) +
                                                      " has a different vertex count");
        }
        // Only a default-constructed Graph can be unconnected here.
        if (frames[i].size() == 0) {
            throw Error(ErrorKind::DisconnectedFrame, "frame " + std::to_string(i + 1) + " is empty");
        }
        if (i > 0 && tau.interval_of(i + 1) == tau.interval_of(i) && !(frames[i] == frames[i - 1])) {
            throw Error(ErrorKind::StabilityViolation,
                        "frame changes at round " + std::to_string(i + 1) +
                            " inside a tau=" + to_string(tau) + " interval");
        }
    }
    dg.frames_.reserve(frames.size());
    for (auto& f : frames) dg.frames_.push_back(std::make_shared<const Graph>(std::move(f)));
    return dg;
}

std::shared_ptr<const Graph> DynamicGraph::frame(std::uint64_t round) const {
    if (round == 0) throw Error(ErrorKind::InvalidParams, "rounds are numbered from 1");
    switch (model_) {
    case DynamicsModel::Static:
        return base_;
    case DynamicsModel::Explicit:
        return frames_[std::min<std::uint64_t>(round, frames_.size()) - 1];
    case DynamicsModel::Permute: {
        const std::uint64_t interval = tau_.interval_of(round);
        if (interval == 0) return base_;
        Rng rng(mix_seed(seed_, interval));
        std::vector<NodeId> perm(n_);
        std::iota(perm.begin(), perm.end(), NodeId{0});
        for (std::size_t i = n_; i > 1; --i) {
            std::swap(perm[i - 1], perm[rng.below(i)]);
        }
        return std::make_shared<const Graph>(base_->relabeled(perm));
    }
    }
    return base_;
}

bool is_tau_stable(const DynamicGraph& dg, std::uint64_t horizon) {
    std::shared_ptr<const Graph> prev;
    for (std::uint64_t r = 1; r <= horizon; ++r) {
        auto cur = dg.frame(r);
        if (r > 1 && dg.tau().interval_of(r) == dg.tau().interval_of(r - 1) && !(*cur == *prev)) {
            return false;
        }
        prev = std::move(cur);
    }
    return true;
}

} // namespace mgs
