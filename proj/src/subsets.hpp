#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "mgs/graph.hpp"
#include "mgs/metrics.hpp"

namespace mgs::detail {

// Bit v of masks[u] is set when (u, v) is an edge. Needs n <= 32.
std::vector<std::uint32_t> adjacency_masks(const Graph& g);

inline std::vector<NodeId> mask_nodes(std::uint32_t mask) {
    std::vector<NodeId> out;
    out.reserve(static_cast<std::size_t>(std::popcount(mask)));
    while (mask != 0) {
        out.push_back(static_cast<NodeId>(std::countr_zero(mask)));
        mask &= mask - 1;
    }
    return out;
}

// Membership flags for a proper non-empty subset. Throws EmptySubset,
// FullSubset or InvalidParams.
std::vector<char> membership(const Graph& g, std::span<const NodeId> subset);

// Candidate subsets for sampled mode: all singletons, then k draws of size
// 1..max_size alternating BFS balls and uniform subsets. Each subset sorted.
std::vector<std::vector<NodeId>> sample_subsets(const Graph& g, const EvalMode& mode,
                                                std::size_t max_size);

} // namespace mgs::detail
