#include "subsets.hpp"

#include <algorithm>
#include <numeric>

#include "mgs/error.hpp"
#include "mgs/rng.hpp"

namespace mgs::detail {

std::vector<std::uint32_t> adjacency_masks(const Graph& g) {
    std::vector<std::uint32_t> masks(g.size(), 0);
    for (NodeId u = 0; u < g.size(); ++u) {
        for (NodeId v : g.neighbors(u)) masks[u] |= std::uint32_t{1} << v;
    }
    return masks;
}

std::vector<char> membership(const Graph& g, std::span<const NodeId> subset) {
    if (subset.empty()) throw Error(ErrorKind::EmptySubset, "subset is empty");
    std::vector<char> in(g.size(), 0);
    for (NodeId u : subset) {
        if (u >= g.size()) {
            throw Error(ErrorKind::InvalidParams, "node " + std::to_string(u) + " not in graph");
        }
        if (in[u]) throw Error(ErrorKind::InvalidParams, "node " + std::to_string(u) + " repeated");
        in[u] = 1;
    }
    if (subset.size() == g.size()) throw Error(ErrorKind::FullSubset, "subset is the whole graph");
    return in;
}

std::vector<std::vector<NodeId>> sample_subsets(const Graph& g, const EvalMode& mode,
                                                std::size_t max_size) {
    const std::size_t n = g.size();
    std::vector<std::vector<NodeId>> out;
    if (max_size == 0) return out;
    out.reserve(n + mode.samples);
    for (NodeId u = 0; u < n; ++u) out.push_back({u});

    Rng rng(mode.seed);
    std::vector<NodeId> pool(n);
    std::vector<char> seen(n);
    for (std::uint32_t i = 0; i < mode.samples; ++i) {
        const std::size_t size = 1 + rng.below(max_size);
        std::vector<NodeId> subset;
        if (i % 2 == 0) {
            std::fill(seen.begin(), seen.end(), 0);
            const auto start = static_cast<NodeId>(rng.below(n));
            subset.push_back(start);
            seen[start] = 1;
            for (std::size_t head = 0; head < subset.size() && subset.size() < size; ++head) {
                for (NodeId v : g.neighbors(subset[head])) {
                    if (subset.size() == size) break;
                    if (!seen[v]) {
                        seen[v] = 1;
                        subset.push_back(v);
                    }
                }
            }
        } else {
            std::iota(pool.begin(), pool.end(), NodeId{0});
            for (std::size_t j = 0; j < size; ++j) {
                std::swap(pool[j], pool[j + rng.below(n - j)]);
            }
            subset.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
        }
        std::sort(subset.begin(), subset.end());
        out.push_back(std::move(subset));
    }
    return out;
}

} // namespace mgs::detail
