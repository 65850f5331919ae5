#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mgs/graph.hpp"
#include "mgs/ratio.hpp"
#include "mgs/sim.hpp"

namespace mgs {

// Builds the topology for one trial from that trial's seed.
using TopologyFactory = std::function<DynamicGraph(std::uint64_t trial_seed)>;

// Trial i runs with seed seed_base + i; results come back in trial order
// whatever the number of worker threads.
std::vector<TrialRecord> run_trials(const TopologyFactory& topology, NodeId source,
                                    const ProtocolSpec& spec, std::uint32_t trials,
                                    std::uint64_t seed_base, const TrialOptions& options,
                                    unsigned jobs = 1);

struct ExperimentSpec {
    Family family = Family::Complete;
    std::vector<std::size_t> sizes;  // n per point; Delta for gstar
    FamilyParams params;             // delta, p and graph seed
    ProtocolSpec protocol;
    std::uint32_t trials = 1;
    std::uint64_t seed_base = 0;
    std::uint64_t max_rounds = 0;    // 0 means 64 n per point
    Stability tau = Stability::unbounded();
    DynamicsModel dynamics = DynamicsModel::Static;
    NodeId source = 0;
    unsigned jobs = 1;
};

// One CSV row: family,n,tau,protocol,b,resolution,seed,rounds,completed.
struct RunRow {
    std::string family;
    std::size_t n = 0;
    Stability tau;
    ProtocolSpec protocol;
    std::uint64_t seed = 0;
    std::uint64_t rounds = 0;
    bool completed = false;
};

struct PointSummary {
    std::size_t n = 0;
    double median = 0;
    double p90 = 0;
    double mean = 0;
    std::uint64_t min = 0;
    std::uint64_t max = 0;
    std::size_t timeouts = 0;
    double completion_rate = 0;
};

struct ExperimentTable {
    std::vector<RunRow> rows;
    std::vector<PointSummary> points;
};

// Timed-out trials contribute their max_rounds to every statistic.
// p90 is the nearest-rank 90th percentile.
PointSummary summarize(std::size_t n, std::span<const TrialRecord> records);

ExperimentTable run_experiment(const ExperimentSpec& spec);

std::string csv_header();
std::string csv_row(const RunRow& row);
std::string to_csv(std::span<const RunRow> rows);
std::string summary_json(const PointSummary& s);

struct PhaseReport {
    Stability tau;
    double f_tau = 0;       // tau * Delta^(1/tau) * log2(n)
    std::vector<bool> good; // one flag per phase
    std::size_t good_count = 0;
    double fraction_good = 0;
};

// Splits a run into length-tau phases and marks a phase good when it grows
// S by the factor 1 + alpha/(4 f) while |S| <= n/2, or shrinks V \ S by
// 1 - alpha/(4 f) afterwards. counts[0] is |S| before round 1 and counts[r]
// after round r. A trailing partial phase is audited only when the run
// finished. Throws TraceIncomplete when no phase can be audited.
PhaseReport audit_phases(std::span<const std::uint32_t> counts, Stability tau, std::size_t max_degree,
                         std::size_t n, Ratio alpha);

// Least-squares slope of log(medians) against log(sizes).
double fit_power_law(std::span<const double> sizes, std::span<const double> medians);

} // namespace mgs
