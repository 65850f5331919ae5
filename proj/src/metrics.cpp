#include "mgs/metrics.hpp"

#include <algorithm>
#include <bit>
#include <optional>

#include "mgs/error.hpp"
#include "subsets.hpp"

namespace mgs {

std::string EvalMode::name() const {
    return exact ? std::string("exact") : "sampled(" + std::to_string(samples) + ")";
}

CutReport cut_report(const Graph& g, std::span<const NodeId> subset) {
    const auto in = detail::membership(g, subset);
    std::vector<char> boundary(g.size(), 0);
    CutReport report;
    report.subset.assign(subset.begin(), subset.end());
    std::sort(report.subset.begin(), report.subset.end());
    for (NodeId u : report.subset) {
        report.volume += g.degree(u);
        for (NodeId v : g.neighbors(u)) {
            if (in[v]) continue;
            ++report.cut_edges;
            if (!boundary[v]) {
                boundary[v] = 1;
                ++report.boundary_size;
            }
        }
    }
    const auto size = static_cast<std::int64_t>(report.subset.size());
    report.alpha = Ratio(static_cast<std::int64_t>(report.boundary_size), size);
    report.phi = Ratio(static_cast<std::int64_t>(report.cut_edges),
                       static_cast<std::int64_t>(report.volume));
    return report;
}

namespace {

void require_enumerable(const Graph& g, const EvalMode& mode, std::size_t cap) {
    if (g.size() < 2) throw Error(ErrorKind::InvalidParams, "expansion needs at least two nodes");
    if (mode.exact && g.size() > cap) {
        throw Error(ErrorKind::TooLargeForExact, "exact mode is limited to n <= " +
                                                     std::to_string(cap) + ", got n = " +
                                                     std::to_string(g.size()));
    }
}

// Split a mask into a low block of up to 12 bits and the remaining high
// bits so per-mask unions and sums come from two small tables.
struct SplitTables {
    unsigned low_bits = 0;
    std::vector<std::uint32_t> low_union, high_union;
    std::vector<std::uint32_t> low_volume, high_volume;

    explicit SplitTables(const Graph& g) {
        const auto masks = detail::adjacency_masks(g);
        const auto n = static_cast<unsigned>(g.size());
        low_bits = std::min(n, 12U);
        const unsigned high_bits = n - low_bits;
        build(masks, g, 0, low_bits, low_union, low_volume);
        build(masks, g, low_bits, high_bits, high_union, high_volume);
    }

    static void build(const std::vector<std::uint32_t>& masks, const Graph& g, unsigned offset,
                      unsigned bits, std::vector<std::uint32_t>& uni,
                      std::vector<std::uint32_t>& vol) {
        uni.assign(std::size_t{1} << bits, 0);
        vol.assign(std::size_t{1} << bits, 0);
        for (std::uint32_t m = 1; m < uni.size(); ++m) {
            const unsigned bit = static_cast<unsigned>(std::countr_zero(m));
            uni[m] = uni[m & (m - 1)] | masks[offset + bit];
            vol[m] = vol[m & (m - 1)] + static_cast<std::uint32_t>(g.degree(offset + bit));
        }
    }
};

ExpansionResult finish(std::uint32_t mask, std::int64_t num, std::int64_t den, EvalMode mode) {
    return ExpansionResult{Ratio(num, den), detail::mask_nodes(mask), mode};
}

// Sampled minimum over candidate subsets; `admit` filters candidates and
// `score` returns (numerator, denominator).
template <typename Admit, typename Score>
ExpansionResult sampled_min(const Graph& g, const EvalMode& mode, std::size_t max_size,
                            Admit admit, Score score) {
    std::optional<ExpansionResult> best;
    for (auto& subset : detail::sample_subsets(g, mode, max_size)) {
        if (!admit(subset)) continue;
        auto [num, den] = score(subset);
        Ratio value(num, den);
        if (!best || value < best->value) best = ExpansionResult{value, std::move(subset), mode};
    }
    if (!best) throw Error(ErrorKind::InvalidParams, "no admissible subset sampled");
    return *best;
}

} // namespace

ExpansionResult vertex_expansion(const Graph& g, EvalMode mode) {
    require_enumerable(g, mode, kExactExpansionCap);
    const std::size_t n = g.size();
    const std::size_t half = n / 2;

    if (!mode.exact) {
        return sampled_min(
            g, mode, half, [](const auto&) { return true; },
            [&](const std::vector<NodeId>& s) {
                auto r = cut_report(g, s);
                return std::pair<std::int64_t, std::int64_t>(
                    static_cast<std::int64_t>(r.boundary_size), static_cast<std::int64_t>(s.size()));
            });
    }

    const SplitTables t(g);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::uint32_t best_mask = 0;
    std::int64_t best_num = 0, best_den = 0;
    for (std::uint32_t hi = 0; hi < t.high_union.size(); ++hi) {
        for (std::uint32_t lo = 0; lo < t.low_union.size(); ++lo) {
            const std::uint32_t mask = (hi << t.low_bits) | lo;
            const auto size = static_cast<std::int64_t>(std::popcount(mask));
            if (size == 0 || static_cast<std::size_t>(size) > half) continue;
            const std::uint32_t reach = (t.low_union[lo] | t.high_union[hi]) & ~mask & full;
            const auto boundary = static_cast<std::int64_t>(std::popcount(reach));
            if (best_den == 0 || boundary * best_den < best_num * size) {
                best_mask = mask;
                best_num = boundary;
                best_den = size;
            }
        }
    }
    return finish(best_mask, best_num, best_den, mode);
}

ExpansionResult conductance(const Graph& g, EvalMode mode) {
    require_enumerable(g, mode, kExactExpansionCap);
    const std::size_t n = g.size();
    const std::size_t total_volume = 2 * g.edge_count();

    if (!mode.exact) {
        return sampled_min(
            g, mode, n - 1,
            [&](const std::vector<NodeId>& s) {
                std::size_t vol = 0;
                for (NodeId u : s) vol += g.degree(u);
                return vol > 0 && 2 * vol <= total_volume;
            },
            [&](const std::vector<NodeId>& s) {
                auto r = cut_report(g, s);
                return std::pair<std::int64_t, std::int64_t>(
                    static_cast<std::int64_t>(r.cut_edges), static_cast<std::int64_t>(r.volume));
            });
    }

    const SplitTables t(g);
    const auto masks = detail::adjacency_masks(g);
    std::uint32_t best_mask = 0;
    std::int64_t best_num = 0, best_den = 0;
    for (std::uint32_t hi = 0; hi < t.high_union.size(); ++hi) {
        for (std::uint32_t lo = 0; lo < t.low_union.size(); ++lo) {
            const std::uint32_t mask = (hi << t.low_bits) | lo;
            const std::uint32_t vol = t.low_volume[lo] + t.high_volume[hi];
            if (vol == 0 || 2 * static_cast<std::size_t>(vol) > total_volume) continue;
            std::int64_t cut = 0;
            for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
                cut += std::popcount(masks[std::countr_zero(rest)] & ~mask);
            }
            if (best_den == 0 || cut * best_den < best_num * static_cast<std::int64_t>(vol)) {
                best_mask = mask;
                best_num = cut;
                best_den = vol;
            }
        }
    }
    return finish(best_mask, best_num, best_den, mode);
}

DegreeStats degree_stats(const Graph& g) {
    DegreeStats stats;
    stats.max_degree = g.max_degree();
    stats.min_degree = g.min_degree();
    stats.histogram.assign(g.max_degree() + 1, 0);
    for (NodeId u = 0; u < g.size(); ++u) ++stats.histogram[g.degree(u)];
    return stats;
}

DynamicMetrics dynamic_metrics(const DynamicGraph& dg, std::uint64_t horizon, EvalMode mode) {
    if (horizon == 0) throw Error(ErrorKind::InvalidParams, "horizon must be >= 1");

    if (dg.model() != DynamicsModel::Explicit) {
        const Graph& base = *dg.base();
        return DynamicMetrics{vertex_expansion(base, mode), conductance(base, mode),
                              base.max_degree(), base.min_degree()};
    }

    // Explicit frames repeat the last one past the end of the list.
    const auto frames = dg.frames();
    const std::size_t used = static_cast<std::size_t>(
        std::min<std::uint64_t>(horizon, frames.size()));
    std::optional<DynamicMetrics> out;
    for (std::size_t i = 0; i < used; ++i) {
        const Graph& frame = *frames[i];
        bool seen = false;
        for (std::size_t j = 0; j < i && !seen; ++j) seen = *frames[j] == frame;
        if (seen) continue;

        auto alpha = vertex_expansion(frame, mode);
        auto phi = conductance(frame, mode);
        if (!out) {
            out = DynamicMetrics{std::move(alpha), std::move(phi), frame.max_degree(),
                                 frame.min_degree()};
            continue;
        }
        if (alpha.value < out->alpha.value) out->alpha = std::move(alpha);
        if (phi.value < out->phi.value) out->phi = std::move(phi);
        out->max_degree = std::max(out->max_degree, frame.max_degree());
        out->min_degree = std::min(out->min_degree, frame.min_degree());
    }
    return *out;
}

} // namespace mgs
