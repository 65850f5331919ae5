#include "mgs/sim.hpp"

#include <algorithm>

#include "mgs/error.hpp"
#include "mgs/matching.hpp"

namespace mgs {

std::optional<Strategy> parse_strategy(std::string_view name) {
    if (name == "push") return Strategy::Push;
    if (name == "rpull") return Strategy::RPull;
    if (name == "pushpull") return Strategy::PushPullAlt;
    if (name == "ppush") return Strategy::PPush;
    if (name == "matchgreedy") return Strategy::MatchGreedy;
    return std::nullopt;
}

std::optional<Resolution> parse_resolution(std::string_view name) {
    if (name == "random") return Resolution::Random;
    if (name == "first_by_id") return Resolution::FirstById;
    if (name == "adversarial_min") return Resolution::AdversarialMin;
    return std::nullopt;
}

std::optional<AcceptanceCap> parse_cap(std::string_view name) {
    if (name == "one") return AcceptanceCap::One;
    if (name == "unbounded") return AcceptanceCap::Unbounded;
    return std::nullopt;
}

std::string_view to_string(Strategy s) {
    switch (s) {
    case Strategy::Push: return "push";
    case Strategy::RPull: return "rpull";
    case Strategy::PushPullAlt: return "pushpull";
    case Strategy::PPush: return "ppush";
    case Strategy::MatchGreedy: return "matchgreedy";
    }
    return "unknown";
}

std::string_view to_string(Resolution r) {
    switch (r) {
    case Resolution::Random: return "random";
    case Resolution::FirstById: return "first_by_id";
    case Resolution::AdversarialMin: return "adversarial_min";
    }
    return "unknown";
}

std::string_view to_string(AcceptanceCap c) {
    return c == AcceptanceCap::One ? "one" : "unbounded";
}

void ProtocolSpec::validate() const {
    switch (strategy) {
    case Strategy::PPush:
        if (tag_bits < 1) throw Error(ErrorKind::InvalidSpec, "ppush needs at least one tag bit");
        break;
    case Strategy::Push:
    case Strategy::RPull:
    case Strategy::PushPullAlt:
        if (tag_bits != 0) {
            throw Error(ErrorKind::InvalidSpec,
                        std::string(to_string(strategy)) + " runs without tags (b = 0)");
        }
        break;
    case Strategy::MatchGreedy:
        break;
    }
}

SimState SimState::start(std::shared_ptr<const Graph> frame, NodeId source) {
    if (!frame || source >= frame->size()) {
        throw Error(ErrorKind::InvalidParams, "source " + std::to_string(source) + " not in graph");
    }
    SimState s;
    s.informed.assign(frame->size(), 0);
    s.informed[source] = 1;
    s.informed_count = 1;
    s.frame = std::move(frame);
    return s;
}

EdgeList resolve_proposals(std::span<const std::vector<NodeId>> incoming, Resolution policy,
                           AcceptanceCap cap, Rng& rng, std::span<const char> informed) {
    EdgeList accepted;
    for (NodeId v = 0; v < incoming.size(); ++v) {
        const auto& from = incoming[v];
        if (from.empty()) continue;
        if (cap == AcceptanceCap::Unbounded) {
            for (NodeId u : from) accepted.emplace_back(u, v);
            continue;
        }
        NodeId pick = from.front();
        if (from.size() > 1) {
            switch (policy) {
            case Resolution::Random:
                pick = from[rng.below(from.size())];
                break;
            case Resolution::FirstById:
                pick = from.front();
                break;
            case Resolution::AdversarialMin: {
                // Greedy stand-in for a worst-case acceptor: prefer a proposer
                // with the acceptor's own status, so the connection is wasted.
                auto useless = std::find_if(from.begin(), from.end(),
                                            [&](NodeId u) { return informed[u] == informed[v]; });
                pick = useless != from.end() ? *useless : from.front();
                break;
            }
            }
        }
        accepted.emplace_back(pick, v);
    }
    return accepted;
}

namespace {

constexpr NodeId kNoTarget = static_cast<NodeId>(-1);

NodeId random_neighbor(const Graph& g, NodeId u, Rng& rng) {
    const auto nb = g.neighbors(u);
    if (nb.empty()) return kNoTarget;
    return nb[rng.below(nb.size())];
}

// PPUSH target: uniform over neighbors whose advertised bit reads uninformed.
NodeId random_uninformed_neighbor(const Graph& g, NodeId u, std::span<const std::uint64_t> tags,
                                  Rng& rng) {
    const auto nb = g.neighbors(u);
    const auto count = static_cast<std::uint64_t>(
        std::count_if(nb.begin(), nb.end(), [&](NodeId v) { return (tags[v] & 1) == 0; }));
    if (count == 0) return kNoTarget;
    std::uint64_t k = rng.below(count);
    for (NodeId v : nb) {
        if ((tags[v] & 1) == 0 && k-- == 0) return v;
    }
    return kNoTarget;
}

} // namespace

RoundOutcome run_round(SimState& state, const ProtocolSpec& spec, Rng& rng) {
    spec.validate();
    if (!state.frame || state.frame->size() != state.informed.size()) {
        throw Error(ErrorKind::FrameMismatch, "frame does not match the simulation vertex set");
    }
    const Graph& g = *state.frame;
    const std::size_t n = g.size();
    const auto& informed = state.informed;

    RoundOutcome out;
    out.round = state.round;

    // Advertise: bit 0 carries the informed flag, remaining bits stay zero.
    if (spec.tag_bits > 0) {
        state.tags.assign(n, 0);
        for (NodeId u = 0; u < n; ++u) state.tags[u] = informed[u] ? 1 : 0;
    } else {
        state.tags.clear();
    }

    if (spec.strategy == Strategy::MatchGreedy) {
        auto matching = max_matching(bridge_from_flags(g, informed));
        out.proposals = matching.pairs;
        out.connections = std::move(matching.pairs);
    } else {
        Strategy step = spec.strategy;
        if (step == Strategy::PushPullAlt) {
            step = state.round % 2 == 1 ? Strategy::Push : Strategy::RPull;
        }

        std::vector<NodeId> target(n, kNoTarget);
        for (NodeId u = 0; u < n; ++u) {
            switch (step) {
            case Strategy::Push:
                if (informed[u]) target[u] = random_neighbor(g, u, rng);
                break;
            case Strategy::RPull:
                if (!informed[u]) target[u] = random_neighbor(g, u, rng);
                break;
            case Strategy::PPush:
                if (informed[u]) target[u] = random_uninformed_neighbor(g, u, state.tags, rng);
                break;
            default:
                break;
            }
            if (target[u] != kNoTarget) out.proposals.emplace_back(u, target[u]);
        }

        std::vector<std::vector<NodeId>> incoming(n);
        for (auto [u, v] : out.proposals) {
            if (target[v] == kNoTarget) incoming[v].push_back(u);
        }
        out.connections = resolve_proposals(incoming, spec.resolution, spec.cap, rng, informed);
        std::sort(out.connections.begin(), out.connections.end());
    }

    // Communicate against the start-of-round informed set.
    std::vector<char> fresh(n, 0);
    for (auto [u, v] : out.connections) {
        if (informed[u] != informed[v]) fresh[informed[u] ? v : u] = 1;
    }
    for (NodeId u = 0; u < n; ++u) {
        if (fresh[u]) {
            out.newly_informed.push_back(u);
            state.informed[u] = 1;
        }
    }
    state.informed_count += out.newly_informed.size();
    ++state.round;
    return out;
}

TrialRecord run_trial(const DynamicGraph& dg, NodeId source, const ProtocolSpec& spec,
                      std::uint64_t seed, const TrialOptions& options) {
    spec.validate();
    const std::uint64_t max_rounds =
        options.max_rounds == 0 ? default_max_rounds(dg.size()) : options.max_rounds;

    TrialRecord record;
    record.seed = seed;
    Rng rng(seed);
    SimState state = SimState::start(dg.frame(1), source);
    record.informed_counts.push_back(static_cast<std::uint32_t>(state.informed_count));

    while (!state.complete() && state.round <= max_rounds) {
        const std::uint64_t r = state.round;
        if (r > 1 && dg.tau().interval_of(r) != dg.tau().interval_of(r - 1)) {
            state.frame = dg.frame(r);
        }
        auto outcome = run_round(state, spec, rng);
        record.informed_counts.push_back(static_cast<std::uint32_t>(state.informed_count));
        if (options.record_trace) record.trace.push_back(std::move(outcome));
    }
    record.rounds = state.round - 1;
    record.completed = state.complete();
    return record;
}

} // namespace mgs
