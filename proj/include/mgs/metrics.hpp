#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mgs/graph.hpp"
#include "mgs/ratio.hpp"

namespace mgs {

struct CutReport {
    std::vector<NodeId> subset;
    std::size_t boundary_size = 0; // |dS|: outside nodes adjacent to S
    std::size_t cut_edges = 0;
    std::size_t volume = 0;
    Ratio alpha;                   // |dS| / |S|
    Ratio phi;                     // cut / vol(S)
};

// Throws EmptySubset / FullSubset, InvalidParams on repeated or unknown IDs.
CutReport cut_report(const Graph& g, std::span<const NodeId> subset);

struct EvalMode {
    bool exact = true;
    std::uint32_t samples = 0;
    std::uint64_t seed = 0;

    static EvalMode exhaustive() { return {}; }
    static EvalMode sampled(std::uint32_t k, std::uint64_t seed = 0) { return {false, k, seed}; }

    // "exact" or "sampled(k)".
    std::string name() const;
};

// Minimum of a subset ratio plus the subset attaining it. Sampled results
// are upper bounds on the true minimum.
struct ExpansionResult {
    Ratio value;
    std::vector<NodeId> witness;
    EvalMode mode;

    bool is_estimate() const noexcept { return !mode.exact; }
};

// Subset enumeration limit for exact alpha and phi.
inline constexpr std::size_t kExactExpansionCap = 24;

// alpha = min over 0 < |S| <= n/2 of |dS|/|S|. Ties go to the numerically
// smallest bitmask (bit i = node i). Requires n >= 2.
ExpansionResult vertex_expansion(const Graph& g, EvalMode mode = EvalMode::exhaustive());

// phi = min over 0 < vol(S) <= vol(V)/2 of cut(S)/vol(S). Same tie rule.
ExpansionResult conductance(const Graph& g, EvalMode mode = EvalMode::exhaustive());

struct DegreeStats {
    std::size_t max_degree = 0;
    std::size_t min_degree = 0;
    std::vector<std::size_t> histogram; // histogram[d] = #nodes of degree d
};

DegreeStats degree_stats(const Graph& g);

struct DynamicMetrics {
    ExpansionResult alpha;
    ExpansionResult phi;
    std::size_t max_degree = 0;
    std::size_t min_degree = 0;
};

// Min alpha/phi and extreme degrees over the frames of rounds 1..horizon.
// Static and permute dynamics report the base graph directly, since
// relabeling preserves every metric.
DynamicMetrics dynamic_metrics(const DynamicGraph& dg, std::uint64_t horizon,
                               EvalMode mode = EvalMode::exhaustive());

} // namespace mgs
