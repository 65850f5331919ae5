#include "mgs/matching.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <optional>

#include "mgs/error.hpp"
#include "subsets.hpp"

namespace mgs {

BridgeGraph bridge_from_flags(const Graph& g, std::span<const char> in_subset) {
    BridgeGraph b;
    for (NodeId u = 0; u < g.size(); ++u) (in_subset[u] ? b.left : b.right).push_back(u);
    for (NodeId u : b.left) {
        for (NodeId v : g.neighbors(u)) {
            if (!in_subset[v]) b.edges.emplace_back(u, v);
        }
    }
    return b;
}

BridgeGraph bridge(const Graph& g, std::span<const NodeId> subset) {
    const auto in = detail::membership(g, subset);
    return bridge_from_flags(g, in);
}

namespace {

constexpr std::uint32_t kFree = std::numeric_limits<std::uint32_t>::max();

class HopcroftKarp {
public:
    explicit HopcroftKarp(const BridgeGraph& b)
        : adj_(b.left.size()), match_left_(b.left.size(), kFree),
          match_right_(b.right.size(), kFree), dist_(b.left.size()) {
        for (auto [u, v] : b.edges) {
            const auto li = index_of(b.left, u);
            const auto ri = index_of(b.right, v);
            adj_[li].push_back(ri);
        }
        while (layer()) {
            for (std::uint32_t u = 0; u < adj_.size(); ++u) {
                if (match_left_[u] == kFree) augment(u);
            }
        }
    }

    const std::vector<std::uint32_t>& left_matches() const { return match_left_; }

private:
    static std::uint32_t index_of(const std::vector<NodeId>& side, NodeId id) {
        auto it = std::lower_bound(side.begin(), side.end(), id);
        if (it == side.end() || *it != id) {
            throw Error(ErrorKind::InvalidParams, "bridge edge endpoint " + std::to_string(id) +
                                                      " is not on its side");
        }
        return static_cast<std::uint32_t>(it - side.begin());
    }

    // BFS from free left nodes; true when some free right node is reachable.
    bool layer() {
        std::vector<std::uint32_t> queue;
        for (std::uint32_t u = 0; u < adj_.size(); ++u) {
            if (match_left_[u] == kFree) {
                dist_[u] = 0;
                queue.push_back(u);
            } else {
                dist_[u] = kFree;
            }
        }
        bool found = false;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const std::uint32_t u = queue[head];
            for (std::uint32_t r : adj_[u]) {
                const std::uint32_t next = match_right_[r];
                if (next == kFree) {
                    found = true;
                } else if (dist_[next] == kFree) {
                    dist_[next] = dist_[u] + 1;
                    queue.push_back(next);
                }
            }
        }
        return found;
    }

    bool augment(std::uint32_t u) {
        for (std::uint32_t r : adj_[u]) {
            const std::uint32_t next = match_right_[r];
            if (next == kFree || (dist_[next] == dist_[u] + 1 && augment(next))) {
                match_left_[u] = r;
                match_right_[r] = u;
                return true;
            }
        }
        dist_[u] = kFree;
        return false;
    }

    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<std::uint32_t> match_left_;
    std::vector<std::uint32_t> match_right_;
    std::vector<std::uint32_t> dist_;
};

// Kuhn's augmenting paths over bitmasks; nu(B(S)) for graphs with n <= 32.
std::size_t bridge_matching_size(const std::vector<std::uint32_t>& masks, std::uint32_t subset,
                                 std::uint32_t full) {
    std::uint32_t match_of_right[32];
    std::uint32_t right_taken = 0;
    const std::uint32_t outside = full & ~subset;

    auto try_kuhn = [&](auto&& self, NodeId u, std::uint32_t& visited) -> bool {
        for (std::uint32_t cand = masks[u] & outside & ~visited; cand != 0; cand &= cand - 1) {
            const auto r = static_cast<unsigned>(std::countr_zero(cand));
            visited |= std::uint32_t{1} << r;
            if (!(right_taken & (std::uint32_t{1} << r)) ||
                self(self, match_of_right[r], visited)) {
                match_of_right[r] = u;
                right_taken |= std::uint32_t{1} << r;
                return true;
            }
        }
        return false;
    };

    std::size_t size = 0;
    for (std::uint32_t rest = subset; rest != 0; rest &= rest - 1) {
        std::uint32_t visited = 0;
        if (try_kuhn(try_kuhn, static_cast<NodeId>(std::countr_zero(rest)), visited)) ++size;
    }
    return size;
}

} // namespace

Matching max_matching(const BridgeGraph& b) {
    HopcroftKarp hk(b);
    Matching m;
    const auto& matches = hk.left_matches();
    for (std::size_t i = 0; i < matches.size(); ++i) {
        if (matches[i] != kFree) m.pairs.emplace_back(b.left[i], b.right[matches[i]]);
    }
    return m;
}

ExpansionResult gamma(const Graph& g, EvalMode mode) {
    const std::size_t n = g.size();
    if (n < 2) throw Error(ErrorKind::InvalidParams, "gamma needs at least two nodes");
    if (mode.exact && n > kExactGammaCap) {
        throw Error(ErrorKind::TooLargeForExact, "exact gamma is limited to n <= " +
                                                     std::to_string(kExactGammaCap) +
                                                     ", got n = " + std::to_string(n));
    }

    if (!mode.exact) {
        std::optional<ExpansionResult> best;
        for (auto& subset : detail::sample_subsets(g, mode, n / 2)) {
            const auto nu = max_matching(bridge(g, subset)).size();
            Ratio value(static_cast<std::int64_t>(nu), static_cast<std::int64_t>(subset.size()));
            if (!best || value < best->value) best = ExpansionResult{value, std::move(subset), mode};
        }
        return *best;
    }

    const auto masks = detail::adjacency_masks(g);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::uint32_t best_mask = 0;
    std::int64_t best_num = 0, best_den = 0;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const auto size = static_cast<std::int64_t>(std::popcount(mask));
        if (static_cast<std::size_t>(size) > n / 2) continue;
        const auto nu = static_cast<std::int64_t>(bridge_matching_size(masks, mask, full));
        if (best_den == 0 || nu * best_den < best_num * size) {
            best_mask = mask;
            best_num = nu;
            best_den = size;
        }
    }
    return ExpansionResult{Ratio(best_num, best_den), detail::mask_nodes(best_mask), mode};
}

MsizeReport verify_msize(const Graph& g) {
    const std::size_t n = g.size();
    if (n > kMsizeCap) {
        throw Error(ErrorKind::TooLargeForExact, "matching-size check is limited to n <= " +
                                                     std::to_string(kMsizeCap));
    }
    MsizeReport report;
    report.alpha = vertex_expansion(g).value;
    const auto masks = detail::adjacency_masks(g);
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    bool have_tightest = false;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const auto size = static_cast<std::int64_t>(std::popcount(mask));
        if (static_cast<std::size_t>(size) > n / 2) continue;
        ++report.subsets_checked;
        const auto nu = static_cast<std::int64_t>(bridge_matching_size(masks, mask, full));
        // nu >= (num/den) * size / 4  <=>  4 nu den >= num size
        if (4 * nu * report.alpha.den() < report.alpha.num() * size) {
            report.violations.push_back(detail::mask_nodes(mask));
        }
        const Ratio ratio(nu * report.alpha.den(), report.alpha.num() * size);
        if (!have_tightest || ratio < report.tightest) {
            have_tightest = true;
            report.tightest = ratio;
            report.tightest_subset = detail::mask_nodes(mask);
        }
    }
    return report;
}

} // namespace mgs
