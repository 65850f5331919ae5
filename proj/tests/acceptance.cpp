// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Thresholds are fixed here and never adjusted to results.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cli.hpp"
#include "graph_suite.hpp"
#include "mgs/experiments.hpp"
#include "mgs/graph_io.hpp"
#include "mgs/matching.hpp"
#include "mgs/metrics.hpp"
#include "mgs/sim.hpp"
#include "oracles.hpp"

using namespace mgs;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

unsigned jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::string str(const Ratio& r) { return std::to_string(r.num()) + "/" + std::to_string(r.den()); }

const std::vector<Graph>& random_suite() {
    static const auto suite = testing::random_connected_suite(500, 12, 20240601);
    return suite;
}

const std::vector<Graph>& small_suite() {
    static const auto suite = testing::connected_graphs_up_to(8);
    return suite;
}

ProtocolSpec spec_of(Strategy s, Resolution r = Resolution::Random) {
    return ProtocolSpec{s, ProtocolSpec::default_tag_bits(s), r, AcceptanceCap::One};
}

DynamicGraph static_dg(const Graph& g) {
    return make_dynamic(g, Stability::unbounded(), DynamicsModel::Static);
}

double median_rounds(const Graph& g, const ProtocolSpec& spec, std::uint32_t trials, std::uint64_t seed,
                     Stability tau = Stability::unbounded(), DynamicsModel model = DynamicsModel::Static) {
    TopologyFactory factory = [&](std::uint64_t s) { return make_dynamic(g, tau, model, s); };
    auto recs = run_trials(factory, 0, spec, trials, seed, {}, jobs());
    return summarize(g.size(), recs).median;
}

// 1. gamma >= alpha / 4 over every connected graph with n <= 8 and the
//    seeded random suite (n <= 12), by exhaustive subset enumeration.
Outcome gamma_vs_alpha() {
    std::size_t checked = 0, violations = 0;
    Ratio tightest(1000, 1);
    auto check = [&](const Graph& g) {
        const Ratio a = vertex_expansion(g).value;
        const Ratio c = gamma(g).value;
        ++checked;
        if (c * Ratio(4, 1) < a) ++violations;
        if (a.num() > 0) tightest = std::min(tightest, c * Ratio(a.den(), a.num()));
    };
    for (const auto& g : small_suite()) check(g);
    for (const auto& g : random_suite()) check(g);
    return {violations == 0, fmt("%zu graphs, %zu violations, min gamma/alpha = %s", checked, violations,
                                 str(tightest).c_str())};
}

// 2. Exact conductance of the generalized stars is at least 1/4.
Outcome gstar_conductance() {
    Outcome o;
    const std::pair<std::size_t, std::size_t> params[] = {{1, 3}, {2, 4}, {3, 9}, {4, 16}};
    for (auto [d, D] : params) {
        const Ratio phi = conductance(gen_gstar(d, D)).value;
        if (phi < Ratio(1, 4)) o.pass = false;
        o.detail += fmt("S(%zu,%zu) phi=%s ", d, D, str(phi).c_str());
    }
    o.detail.pop_back();
    return o;
}

// 3. Every PPUSH and PUSHPULL_ALT trial on gstar(2,64) takes >= 32 rounds,
//    under every resolution policy.
Outcome gstar_lower_bound() {
    const Graph g = gen_gstar(2, 64);
    TopologyFactory factory = [&](std::uint64_t) { return static_dg(g); };
    std::uint64_t fastest = UINT64_MAX;
    std::size_t trials = 0, short_runs = 0;
    for (auto s : {Strategy::PPush, Strategy::PushPullAlt}) {
        for (auto r : {Resolution::Random, Resolution::FirstById, Resolution::AdversarialMin}) {
            for (const auto& rec : run_trials(factory, 0, spec_of(s, r), 100, 1000, {}, jobs())) {
                ++trials;
                fastest = std::min(fastest, rec.rounds);
                if (rec.rounds < 32) ++short_runs;
            }
        }
    }
    return {short_runs == 0, fmt("%zu trials, fastest %llu rounds, %zu below 32", trials,
                                 static_cast<unsigned long long>(fastest), short_runs)};
}

// 4. Bad graph: PUSHPULL_ALT median exponent in [0.35, 0.65]; PPUSH median
//    at n = 4096 at most a tenth of the PUSHPULL_ALT median.
Outcome badgraph_separation() {
    ExperimentSpec spec;
    spec.family = Family::BadGraph;
    spec.sizes = {256, 1024, 4096};
    spec.trials = 20;
    spec.seed_base = 1;
    spec.jobs = jobs();
    spec.protocol = spec_of(Strategy::PushPullAlt);
    const auto pp = run_experiment(spec);
    spec.protocol = spec_of(Strategy::PPush);
    const auto pu = run_experiment(spec);

    std::vector<double> sizes, medians;
    for (const auto& p : pp.points) {
        sizes.push_back(static_cast<double>(p.n));
        medians.push_back(p.median);
    }
    const double exponent = fit_power_law(sizes, medians);
    const double pp_big = pp.points.back().median;
    const double pu_big = pu.points.back().median;
    const bool exp_ok = exponent >= 0.35 && exponent <= 0.65;
    const bool ratio_ok = pu_big <= pp_big / 10.0;
    return {exp_ok && ratio_ok,
            fmt("pushpull medians %.1f/%.1f/%.1f exponent %.3f [%s]; ppush median at 4096 %.1f vs limit %.1f [%s]",
                medians[0], medians[1], medians[2], exponent, exp_ok ? "ok" : "out of range", pu_big,
                pp_big / 10.0, ratio_ok ? "ok" : "too slow")};
}

// 5. MATCH_GREEDY completes within 10 (1/gamma) ln n + 3 rounds.
Outcome match_greedy_bound() {
    std::size_t violations = 0;
    double worst = 0;
    for (const auto& g : random_suite()) {
        const Ratio c = gamma(g).value;
        const double bound = 10.0 * (static_cast<double>(c.den()) / static_cast<double>(c.num())) *
                                 std::log(static_cast<double>(g.size())) +
                             3.0;
        const auto rec = run_trial(static_dg(g), 0, spec_of(Strategy::MatchGreedy), 0);
        if (!rec.completed || static_cast<double>(rec.rounds) > bound) ++violations;
        worst = std::max(worst, static_cast<double>(rec.rounds) / bound);
    }
    return {violations == 0,
            fmt("%zu graphs, %zu violations, worst rounds/bound %.3f", random_suite().size(), violations, worst)};
}

// 6. 10^4 fuzzed rounds: connections form a matching and no proposer accepts.
Outcome matching_invariant() {
    const Strategy strategies[] = {Strategy::Push, Strategy::RPull, Strategy::PushPullAlt, Strategy::PPush,
                                   Strategy::MatchGreedy};
    const Resolution policies[] = {Resolution::Random, Resolution::FirstById, Resolution::AdversarialMin};
    Rng pick(606);
    std::size_t rounds = 0, violations = 0, connections = 0;
    for (std::size_t i = 0; i < 10000; ++i) {
        const Graph& g = random_suite()[i % random_suite().size()];
        const auto spec = spec_of(strategies[i % 5], policies[(i / 5) % 3]);
        auto state = SimState::start(std::make_shared<const Graph>(g), static_cast<NodeId>(pick.below(g.size())));
        for (NodeId u = 0; u < g.size(); ++u) {
            if (pick.unit() < 0.4 && !state.informed[u]) {
                state.informed[u] = 1;
                ++state.informed_count;
            }
        }
        state.round = 1 + pick.below(4);
        Rng rng(mix_seed(606, i));
        const auto out = run_round(state, spec, rng);
        ++rounds;
        connections += out.connections.size();

        std::set<NodeId> proposers;
        for (auto [u, v] : out.proposals) proposers.insert(u);
        bool ok = testing::is_matching(out.connections);
        for (auto [u, v] : out.connections) {
            ok &= g.has_edge(u, v);
            ok &= proposers.count(u) == 1 && proposers.count(v) == 0;
        }
        if (!ok) ++violations;
    }
    return {violations == 0, fmt("%zu rounds, %zu connections, %zu violations", rounds, connections, violations)};
}

// 7. MATCH_GREEDY traces on all connected n <= 8 graphs are 100% good
//    (tau = 1); PPUSH on K_{1,9} with tau = 1 is >= 50% good over 50 trials.
Outcome phase_audit() {
    std::size_t graphs = 0, imperfect = 0;
    for (const auto& g : small_suite()) {
        const auto rec = run_trial(static_dg(g), 0, spec_of(Strategy::MatchGreedy), 0);
        const auto rep = audit_phases(rec.informed_counts, Stability::every(1), g.max_degree(), g.size(),
                                      vertex_expansion(g).value);
        ++graphs;
        if (rep.good_count != rep.good.size()) ++imperfect;
    }

    EdgeList star;
    for (NodeId v = 1; v <= 9; ++v) star.emplace_back(0, v);
    const Graph k19 = make_graph(10, star);
    const Ratio a = vertex_expansion(k19).value;
    auto dg = make_dynamic(k19, Stability::every(1), DynamicsModel::Static);
    std::size_t good = 0, phases = 0;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto rec = run_trial(dg, 0, spec_of(Strategy::PPush), seed);
        const auto rep = audit_phases(rec.informed_counts, Stability::every(1), k19.max_degree(), 10, a);
        good += rep.good_count;
        phases += rep.good.size();
    }
    const double frac = static_cast<double>(good) / static_cast<double>(phases);
    return {imperfect == 0 && frac >= 0.5,
            fmt("matchgreedy: %zu graphs, %zu not fully good; ppush star: %zu/%zu good (%.3f)", graphs, imperfect,
                good, phases, frac)};
}

// 8. PPUSH on K_256 and K_1024: static median <= 10 log2 n; permute with
//    tau = 1 at most 4x the static median.
Outcome complete_graph_ppush() {
    Outcome o;
    for (std::size_t n : {256, 1024}) {
        FamilyParams p;
        p.n = n;
        const Graph k = gen_family(Family::Complete, p);
        const double stat = median_rounds(k, spec_of(Strategy::PPush), 20, 1);
        const double perm = median_rounds(k, spec_of(Strategy::PPush), 20, 1, Stability::every(1),
                                          DynamicsModel::Permute);
        const double limit = 10.0 * std::log2(static_cast<double>(n));
        if (stat > limit || perm > 4.0 * stat) o.pass = false;
        o.detail += fmt("K%zu static %.1f (limit %.1f) permute %.1f (limit %.1f); ", n, stat, limit, perm, 4.0 * stat);
    }
    o.detail.resize(o.detail.size() - 2);
    return o;
}

// 9. Generated dynamic graphs are tau-stable and simulate is byte-reproducible.
Outcome stability_and_determinism() {
    std::size_t graphs = 0, unstable = 0;
    const Graph bases[] = {gen_badgraph(64), gen_gstar(2, 8), gen_family(Family::Cycle, FamilyParams{12})};
    for (const auto& base : bases) {
        for (std::uint32_t tau : {1U, 2U, 3U, 7U}) {
            for (auto model : {DynamicsModel::Static, DynamicsModel::Permute}) {
                for (std::uint64_t seed = 0; seed < 4; ++seed) {
                    ++graphs;
                    if (!is_tau_stable(make_dynamic(base, Stability::every(tau), model, seed), 60)) ++unstable;
                }
            }
        }
    }

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "mgs_acceptance";
    fs::create_directories(dir);
    write_graph(dir / "bad.json", gen_badgraph(64));
    write_dynamic(dir / "dyn.json", make_dynamic(gen_gstar(2, 16), Stability::every(2), DynamicsModel::Permute, 3));
    const std::vector<std::vector<std::string>> invocations = {
        {"simulate", (dir / "bad.json").string(), "--protocol", "ppush", "--trials", "10", "--seed", "4"},
        {"simulate", (dir / "bad.json").string(), "--protocol", "pushpull", "--trials", "10", "--seed", "4",
         "--tau", "1", "--dynamics", "permute", "--jobs", "4"},
        {"simulate", (dir / "bad.json").string(), "--protocol", "rpull", "--resolution", "adversarial_min",
         "--trials", "5"},
        {"simulate", (dir / "dyn.json").string(), "--protocol", "matchgreedy", "--trials", "3"},
    };
    std::size_t mismatches = 0, runs = 0;
    for (auto args : invocations) {
        args.insert(args.begin(), "mgs");
        std::string first;
        for (int rep = 0; rep < 2; ++rep) {
            std::ostringstream out, err;
            if (cli::run(args, out, err) != 0) {
                ++mismatches;
                break;
            }
            if (rep == 0) {
                first = out.str();
            } else if (out.str() != first) {
                ++mismatches;
            }
        }
        ++runs;
    }
    fs::remove_all(dir);
    return {unstable == 0 && mismatches == 0,
            fmt("%zu dynamic graphs, %zu unstable; %zu simulate commands, %zu differing reruns", graphs, unstable,
                runs, mismatches)};
}

} // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
        {"gamma >= alpha/4", gamma_vs_alpha},
        {"generalized star conductance >= 1/4", gstar_conductance},
        {"gstar(2,64) needs >= 32 rounds", gstar_lower_bound},
        {"bad graph separation", badgraph_separation},
        {"matchgreedy within 10 (1/gamma) ln n + 3", match_greedy_bound},
        {"connections form a matching", matching_invariant},
        {"good-phase audit", phase_audit},
        {"ppush on complete graphs", complete_graph_ppush},
        {"tau-stability and determinism", stability_and_determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        std::printf("criterion %zu %s: %s (%s) [%.1fs]\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                    o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
