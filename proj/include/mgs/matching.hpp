#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mgs/graph.hpp"
#include "mgs/metrics.hpp"
#include "mgs/ratio.hpp"

namespace mgs {

// Bipartite graph B(S) between S and V \ S over the host graph's cross edges.
struct BridgeGraph {
    std::vector<NodeId> left;  // S, ascending
    std::vector<NodeId> right; // V \ S, ascending
    EdgeList edges;            // (left, right), lexicographic
};

// Throws EmptySubset / FullSubset.
BridgeGraph bridge(const Graph& g, std::span<const NodeId> subset);

// Same cross edges, with S given as per-node flags (flags[u] != 0 => u in S).
BridgeGraph bridge_from_flags(const Graph& g, std::span<const char> in_subset);

struct Matching {
    EdgeList pairs; // (left, right), ordered by left ID

    std::size_t size() const noexcept { return pairs.size(); }
};

// Maximum-cardinality matching via Hopcroft-Karp. Left nodes are scanned in
// ascending ID order and neighbors in edge order, so the result is a pure
// function of the input.
Matching max_matching(const BridgeGraph& b);

inline constexpr std::size_t kExactGammaCap = 16;

// gamma = min over 0 < |S| <= n/2 of nu(B(S)) / |S|. Exact mode enumerates
// subsets up to n = 16; ties go to the smallest bitmask.
ExpansionResult gamma(const Graph& g, EvalMode mode = EvalMode::exhaustive());

inline constexpr std::size_t kMsizeCap = 12;

struct MsizeReport {
    Ratio alpha;
    std::size_t subsets_checked = 0;
    // Subsets with nu(B(S)) < alpha |S| / 4; empty when the bound holds.
    std::vector<std::vector<NodeId>> violations;
    // min over S of nu(B(S)) / (alpha |S|) and a subset attaining it.
    Ratio tightest;
    std::vector<NodeId> tightest_subset;
};

// Checks nu(B(S)) >= alpha |S| / 4 for every S with 0 < |S| <= n/2 (n <= 12).
MsizeReport verify_msize(const Graph& g);

} // namespace mgs
