#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "mgs/graph.hpp"
#include "mgs/rng.hpp"

namespace mgs {

enum class Strategy { Push, RPull, PushPullAlt, PPush, MatchGreedy };
enum class Resolution { Random, FirstById, AdversarialMin };
enum class AcceptanceCap { One, Unbounded };

std::optional<Strategy> parse_strategy(std::string_view name);
std::optional<Resolution> parse_resolution(std::string_view name);
std::optional<AcceptanceCap> parse_cap(std::string_view name);
std::string_view to_string(Strategy s);
std::string_view to_string(Resolution r);
std::string_view to_string(AcceptanceCap c);

struct ProtocolSpec {
    Strategy strategy = Strategy::PPush;
    std::uint32_t tag_bits = 1;
    Resolution resolution = Resolution::Random;
    AcceptanceCap cap = AcceptanceCap::One;

    // Tag width each strategy runs with: 1 for PPUSH, 0 otherwise.
    static std::uint32_t default_tag_bits(Strategy s) { return s == Strategy::PPush ? 1 : 0; }

    // PPUSH needs b >= 1; PUSH, RPULL and PUSHPULL_ALT need b = 0;
    // MATCH_GREEDY accepts any b. Throws InvalidSpec.
    void validate() const;
};

struct SimState {
    std::uint64_t round = 1;            // next round to run
    std::vector<char> informed;         // S_t as flags
    std::size_t informed_count = 0;
    std::vector<std::uint64_t> tags;    // last published tags; empty when b = 0
    std::shared_ptr<const Graph> frame; // topology of the next round

    static SimState start(std::shared_ptr<const Graph> frame, NodeId source);

    bool complete() const noexcept { return informed_count == informed.size(); }
};

struct RoundOutcome {
    std::uint64_t round = 0;
    EdgeList proposals;               // (proposer, target), ascending proposer
    EdgeList connections;             // (proposer, acceptor), ascending proposer
    std::vector<NodeId> newly_informed; // ascending
};

// Picks the accepted proposals. incoming[v] lists the proposers to v in
// ascending order and must already exclude proposals to proposing nodes.
// Returns (proposer, acceptor) pairs in ascending acceptor order. RANDOM draws
// from rng only for acceptors with two or more proposers.
EdgeList resolve_proposals(std::span<const std::vector<NodeId>> incoming, Resolution policy,
                           AcceptanceCap cap, Rng& rng, std::span<const char> informed);

// One advertise / propose / resolve / communicate round on state.frame.
// Tags and targets use the informed set at the start of the round.
// Throws FrameMismatch or InvalidSpec.
RoundOutcome run_round(SimState& state, const ProtocolSpec& spec, Rng& rng);

struct TrialOptions {
    std::uint64_t max_rounds = 0; // 0 means 64 n
    bool record_trace = false;
};

struct TrialRecord {
    std::uint64_t seed = 0;
    bool completed = false;
    std::uint64_t rounds = 0;                  // rounds run; max_rounds on timeout
    std::vector<std::uint32_t> informed_counts; // [0] = 1, [r] = |S| after round r
    std::vector<RoundOutcome> trace;           // filled when record_trace
};

inline std::uint64_t default_max_rounds(std::size_t n) { return 64 * static_cast<std::uint64_t>(n); }

// Runs rounds until every node is informed or max_rounds elapse. Output is a
// pure function of (dg, source, spec, seed, options).
TrialRecord run_trial(const DynamicGraph& dg, NodeId source, const ProtocolSpec& spec,
                      std::uint64_t seed, const TrialOptions& options = {});

} // namespace mgs
