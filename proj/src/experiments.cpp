#include "mgs/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "json.hpp"
#include "mgs/error.hpp"

namespace mgs {

std::vector<TrialRecord> run_trials(const TopologyFactory& topology, NodeId source,
                                    const ProtocolSpec& spec, std::uint32_t trials,
                                    std::uint64_t seed_base, const TrialOptions& options,
                                    unsigned jobs) {
    if (trials == 0) throw Error(ErrorKind::InvalidParams, "trials must be >= 1");
    spec.validate();

    std::vector<TrialRecord> records(trials);
    std::atomic<std::uint32_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::uint32_t i = next++; i < trials; i = next++) {
            try {
                const std::uint64_t seed = seed_base + i;
                records[i] = run_trial(topology(seed), source, spec, seed, options);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = trials;
            }
        }
    };

    const unsigned workers = std::clamp(jobs, 1U, trials);
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return records;
}

PointSummary summarize(std::size_t n, std::span<const TrialRecord> records) {
    if (records.empty()) throw Error(ErrorKind::InvalidParams, "no trials to summarize");
    std::vector<std::uint64_t> rounds;
    rounds.reserve(records.size());
    PointSummary s;
    s.n = n;
    for (const auto& r : records) {
        rounds.push_back(r.rounds);
        if (!r.completed) ++s.timeouts;
    }
    std::sort(rounds.begin(), rounds.end());
    const std::size_t k = rounds.size();
    s.median = k % 2 == 1 ? static_cast<double>(rounds[k / 2])
                          : (static_cast<double>(rounds[k / 2 - 1]) + static_cast<double>(rounds[k / 2])) / 2.0;
    const std::size_t rank = (9 * k + 9) / 10; // ceil(0.9 k)
    s.p90 = static_cast<double>(rounds[rank - 1]);
    s.mean = static_cast<double>(std::accumulate(rounds.begin(), rounds.end(), std::uint64_t{0})) /
             static_cast<double>(k);
    s.min = rounds.front();
    s.max = rounds.back();
    s.completion_rate = static_cast<double>(k - s.timeouts) / static_cast<double>(k);
    return s;
}

ExperimentTable run_experiment(const ExperimentSpec& spec) {
    if (spec.sizes.empty()) throw Error(ErrorKind::InvalidParams, "size list is empty");
    if (spec.trials == 0) throw Error(ErrorKind::InvalidParams, "trials must be >= 1");
    spec.protocol.validate();
    if (spec.dynamics == DynamicsModel::Explicit) {
        throw Error(ErrorKind::InvalidParams, "sweeps support static and permute dynamics only");
    }

    ExperimentTable table;
    for (std::size_t size : spec.sizes) {
        FamilyParams params = spec.params;
        if (spec.family == Family::GStar) {
            params.Delta = size;
        } else {
            params.n = size;
        }
        Graph base = gen_family(spec.family, params);
        const std::size_t n = base.size();

        TopologyFactory factory = [&](std::uint64_t seed) {
            return DynamicGraph::generated(base, spec.tau, spec.dynamics, seed);
        };
        TrialOptions options;
        options.max_rounds = spec.max_rounds;
        auto records = run_trials(factory, spec.source, spec.protocol, spec.trials, spec.seed_base,
                                  options, spec.jobs);

        for (const auto& r : records) {
            table.rows.push_back(RunRow{std::string(to_string(spec.family)), n, spec.tau,
                                        spec.protocol, r.seed, r.rounds, r.completed});
        }
        table.points.push_back(summarize(n, records));
    }
    return table;
}

std::string csv_header() { return "family,n,tau,protocol,b,resolution,seed,rounds,completed\n"; }

std::string csv_row(const RunRow& row) {
    std::string out;
    out += row.family;
    out += ',' + std::to_string(row.n);
    out += ',' + to_string(row.tau);
    out += ',' + std::string(to_string(row.protocol.strategy));
    out += ',' + std::to_string(row.protocol.tag_bits);
    out += ',' + std::string(to_string(row.protocol.resolution));
    out += ',' + std::to_string(row.seed);
    out += ',' + std::to_string(row.rounds);
    out += row.completed ? ",1\n" : ",0\n";
    return out;
}

std::string to_csv(std::span<const RunRow> rows) {
    std::string out = csv_header();
    for (const auto& r : rows) out += csv_row(r);
    return out;
}

std::string summary_json(const PointSummary& s) {
    nlohmann::ordered_json j{{"n", s.n},         {"median", s.median}, {"p90", s.p90},
                     {"mean", s.mean},   {"min", s.min},       {"max", s.max},
                     {"timeouts", s.timeouts}, {"completion_rate", s.completion_rate}};
    return j.dump();
}

PhaseReport audit_phases(std::span<const std::uint32_t> counts, Stability tau, std::size_t max_degree,
                         std::size_t n, Ratio alpha) {
    if (tau.is_unbounded()) {
        throw Error(ErrorKind::InvalidParams, "phase audit needs a finite tau");
    }
    if (n < 2 || max_degree < 1 || alpha.num() <= 0) {
        throw Error(ErrorKind::InvalidParams, "phase audit needs n >= 2, Delta >= 1, alpha > 0");
    }
    if (counts.empty()) throw Error(ErrorKind::TraceIncomplete, "trace has no rounds");

    const std::size_t len = tau.rounds();
    const std::size_t rounds = counts.size() - 1;
    const bool finished = counts.back() == n;
    std::size_t phases = rounds / len;
    if (finished && rounds % len != 0) ++phases;
    if (phases == 0) {
        throw Error(ErrorKind::TraceIncomplete, "trace of " + std::to_string(rounds) +
                                                    " rounds is shorter than one phase of " +
                                                    std::to_string(len));
    }

    PhaseReport report;
    report.tau = tau;
    report.f_tau = static_cast<double>(len) *
                   std::pow(static_cast<double>(max_degree), 1.0 / static_cast<double>(len)) *
                   std::log2(static_cast<double>(n));
    const double step = alpha.to_double() / (4.0 * report.f_tau);

    for (std::size_t p = 0; p < phases; ++p) {
        const double before = counts[p * len];
        const double after = counts[std::min((p + 1) * len, rounds)];
        bool good;
        if (2 * counts[p * len] <= n) {
            good = after >= (1.0 + step) * before;
        } else {
            const double nn = static_cast<double>(n);
            good = nn - after <= (1.0 - step) * (nn - before);
        }
        report.good.push_back(good);
        if (good) ++report.good_count;
    }
    report.fraction_good = static_cast<double>(report.good_count) / static_cast<double>(phases);
    return report;
}

double fit_power_law(std::span<const double> sizes, std::span<const double> medians) {
    if (sizes.size() != medians.size() || sizes.size() < 2) {
        throw Error(ErrorKind::InvalidParams, "power-law fit needs two or more (size, median) pairs");
    }
    const std::size_t k = sizes.size();
    double mx = 0, my = 0;
    std::vector<double> xs(k), ys(k);
    for (std::size_t i = 0; i < k; ++i) {
        if (!(sizes[i] > 0) || !(medians[i] > 0)) {
            throw Error(ErrorKind::InvalidParams, "power-law fit needs positive values");
        }
        xs[i] = std::log(sizes[i]);
        ys[i] = std::log(medians[i]);
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(k);
    my /= static_cast<double>(k);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < k; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0) throw Error(ErrorKind::InvalidParams, "power-law fit needs distinct sizes");
    return sxy / sxx;
}

} // namespace mgs
