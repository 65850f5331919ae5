#include "cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mgs/error.hpp"
#include "mgs/experiments.hpp"
#include "mgs/graph.hpp"
#include "mgs/graph_io.hpp"
#include "mgs/matching.hpp"
#include "mgs/metrics.hpp"
#include "mgs/sim.hpp"

namespace mgs::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Flag-level problems found after CLI11 parsing; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// JSON config files: top-level keys set global flags, nested objects set the
// flags of the subcommand they are named after, e.g.
//   {"simulate": {"trials": 20, "protocol": "ppush"}}
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        json j;
        try {
            j = json::parse(input);
        } catch (const json::parse_error& e) {
            throw CLI::ConversionError(std::string("config file: ") + e.what());
        }
        if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
        std::vector<CLI::ConfigItem> items;
        collect(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
        return v.dump();
    }

    static void collect(const json& obj, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : obj.items()) {
            if (value.is_object()) {
                auto nested = parents;
                nested.push_back(key);
                collect(value, nested, items);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto& v : value) item.inputs.push_back(scalar(v));
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
    }
};

Stability parse_tau(const std::string& text) {
    if (text == "inf") return Stability::unbounded();
    std::uint32_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
        throw UsageError("--tau must be a positive integer or \"inf\", got \"" + text + "\"");
    }
    return Stability::every(value);
}

void emit(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
    if (path) {
        write_text_file(*path, text);
    } else {
        out << text;
    }
}

json expansion_json(const ExpansionResult& r) {
    return json{{"num", r.value.num()},
                {"den", r.value.den()},
                {"witness", r.witness},
                {"mode", r.mode.name()}};
}

const std::vector<std::string> kFamilies{"gstar", "badgraph", "complete", "cycle", "path", "gnp", "hypercube"};
const std::vector<std::string> kProtocols{"push", "rpull", "pushpull", "ppush", "matchgreedy"};
const std::vector<std::string> kResolutions{"random", "first_by_id", "adversarial_min"};
const std::vector<std::string> kCaps{"one", "unbounded"};
const std::vector<std::string> kGeneratedDynamics{"static", "permute"};

struct GenArgs {
    std::string family;
    std::size_t n = 0;
    std::size_t delta = 0;
    std::size_t Delta = 0;
    double p = 0.0;
    std::uint64_t seed = 0;
    std::optional<std::string> tau;
    std::optional<std::string> dynamics;
    std::optional<std::string> out;
};

struct AnalyzeArgs {
    std::string file;
    bool alpha = false;
    bool phi = false;
    bool gamma = false;
    bool exact = false;
    std::optional<std::uint32_t> sample;
    std::uint64_t seed = 0;
    std::uint64_t horizon = 64;
    std::optional<std::string> out;
};

struct ProtocolArgs {
    std::string protocol;
    std::optional<std::uint32_t> b;
    std::string resolution = "random";
    std::string cap = "one";
    std::optional<std::string> tau;
    std::optional<std::string> dynamics;
    std::uint64_t max_rounds = 0;
    unsigned jobs = 1;
    std::uint32_t trials = 1;
    std::uint64_t seed = 0;

    ProtocolSpec spec() const {
        ProtocolSpec s;
        s.strategy = *parse_strategy(protocol);
        s.tag_bits = b.value_or(ProtocolSpec::default_tag_bits(s.strategy));
        s.resolution = *parse_resolution(resolution);
        s.cap = *parse_cap(cap);
        s.validate();
        return s;
    }
};

struct SimulateArgs {
    std::string file;
    ProtocolArgs proto;
    NodeId source = 0;
    std::optional<std::string> trace;
    std::optional<std::string> out;
};

struct SweepArgs {
    std::string family;
    std::vector<std::size_t> sizes;
    std::size_t delta = 1;
    double p = 0.0;
    std::uint64_t graph_seed = 0;
    ProtocolArgs proto;
    bool fit = false;
    std::optional<std::string> out;
    std::optional<std::string> summary;
};

void add_protocol_flags(CLI::App* cmd, ProtocolArgs& a) {
    cmd->add_option("--protocol", a.protocol, "Spreading strategy")
        ->required()
        ->check(CLI::IsMember(kProtocols));
    cmd->add_option("--b", a.b, "Tag width in bits (default: 1 for ppush, 0 otherwise)");
    cmd->add_option("--resolution", a.resolution,
                    "Proposal resolution policy (adversarial_min is a heuristic adversary)")
        ->check(CLI::IsMember(kResolutions))
        ->capture_default_str();
    cmd->add_option("--cap", a.cap, "Accepted proposals per node and round")
        ->check(CLI::IsMember(kCaps))
        ->capture_default_str();
    cmd->add_option("--tau", a.tau, "Stability: positive integer or inf (default inf)");
    cmd->add_option("--dynamics", a.dynamics, "Topology dynamics (default static)")
        ->check(CLI::IsMember(kGeneratedDynamics));
    cmd->add_option("--trials", a.trials, "Trials per point")->check(CLI::PositiveNumber)->capture_default_str();
    cmd->add_option("--seed", a.seed, "Seed of trial 0; trial i uses seed + i")->capture_default_str();
    cmd->add_option("--max-rounds", a.max_rounds, "Round limit per trial (default 64 n)");
    cmd->add_option("--jobs", a.jobs, "Worker threads")
        ->envname("MGS_JOBS")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

int cmd_gen(const GenArgs& a, std::ostream& out) {
    const Family family = *parse_family(a.family);
    FamilyParams params;
    params.n = a.n;
    params.delta = a.delta;
    params.Delta = a.Delta;
    params.p = a.p;
    params.seed = a.seed;
    Graph g = gen_family(family, params);

    if (a.tau || a.dynamics) {
        const Stability tau = a.tau ? parse_tau(*a.tau) : Stability::unbounded();
        const DynamicsModel model = *parse_dynamics(a.dynamics.value_or("static"));
        emit(a.out, dynamic_to_json(DynamicGraph::generated(std::move(g), tau, model, a.seed)), out);
    } else {
        emit(a.out, graph_to_json(g), out);
    }
    return kExitOk;
}

int cmd_analyze(const AnalyzeArgs& a, std::ostream& out) {
    if (a.exact && a.sample) throw UsageError("--exact and --sample are mutually exclusive");
    const bool all = !a.alpha && !a.phi && !a.gamma;
    const Topology topo = topology_from_json(read_text_file(a.file));

    // Without --exact or --sample, exact where the cap allows, else 256 samples.
    auto mode_for = [&](std::size_t n, std::size_t cap) {
        if (a.sample) return EvalMode::sampled(*a.sample, a.seed);
        if (a.exact || n <= cap) return EvalMode::exhaustive();
        return EvalMode::sampled(256, a.seed);
    };

    json report = json::object();
    if (const auto* g = std::get_if<Graph>(&topo)) {
        if (all || a.alpha) report["alpha"] = expansion_json(vertex_expansion(*g, mode_for(g->size(), kExactExpansionCap)));
        if (all || a.phi) report["phi"] = expansion_json(conductance(*g, mode_for(g->size(), kExactExpansionCap)));
        if (all || a.gamma) report["gamma"] = expansion_json(gamma(*g, mode_for(g->size(), kExactGammaCap)));
        report["Delta"] = g->max_degree();
        report["delta"] = g->min_degree();
    } else {
        const auto& dg = std::get<DynamicGraph>(topo);
        const auto m = dynamic_metrics(dg, a.horizon, mode_for(dg.size(), kExactExpansionCap));
        if (all || a.alpha) report["alpha"] = expansion_json(m.alpha);
        if (all || a.phi) report["phi"] = expansion_json(m.phi);
        if (all || a.gamma) {
            // Minimum over the distinct frames seen within the horizon.
            const auto mode = mode_for(dg.size(), kExactGammaCap);
            std::optional<ExpansionResult> best;
            if (dg.model() != DynamicsModel::Explicit) {
                best = gamma(*dg.base(), mode);
            } else {
                const auto limit = std::min<std::uint64_t>(a.horizon, dg.frames().size());
                for (std::uint64_t i = 0; i < limit; ++i) {
                    auto r = gamma(*dg.frames()[i], mode);
                    if (!best || r.value < best->value) best = std::move(r);
                }
            }
            report["gamma"] = expansion_json(*best);
        }
        report["Delta"] = m.max_degree;
        report["delta"] = m.min_degree;
    }
    emit(a.out, report.dump(2) + "\n", out);
    return kExitOk;
}

std::string trace_lines(const TrialRecord& record) {
    std::string text;
    for (std::size_t i = 0; i < record.trace.size(); ++i) {
        const auto& r = record.trace[i];
        ordered_json line;
        line["t"] = r.round;
        line["informed"] = record.informed_counts[i + 1];
        line["proposals"] = r.proposals;
        line["connections"] = r.connections;
        line["new"] = r.newly_informed;
        text += line.dump() + "\n";
    }
    return text;
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
    const ProtocolSpec spec = a.proto.spec();
    const Topology topo = topology_from_json(read_text_file(a.file));

    TopologyFactory factory;
    Stability tau = Stability::unbounded();
    std::size_t n = 0;
    if (const auto* g = std::get_if<Graph>(&topo)) {
        tau = a.proto.tau ? parse_tau(*a.proto.tau) : Stability::unbounded();
        const DynamicsModel model = *parse_dynamics(a.proto.dynamics.value_or("static"));
        n = g->size();
        factory = [g, tau, model](std::uint64_t seed) {
            return DynamicGraph::generated(*g, tau, model, seed);
        };
    } else {
        if (a.proto.tau || a.proto.dynamics) {
            throw UsageError("--tau and --dynamics do not apply to a dynamic graph file");
        }
        const auto* dg = &std::get<DynamicGraph>(topo);
        tau = dg->tau();
        n = dg->size();
        factory = [dg](std::uint64_t) { return *dg; };
    }
    if (a.source >= n) throw UsageError("--source " + std::to_string(a.source) + " is not a node");

    TrialOptions options;
    options.max_rounds = a.proto.max_rounds;
    options.record_trace = a.trace.has_value();
    const auto records = run_trials(factory, a.source, spec, a.proto.trials, a.proto.seed, options,
                                    a.proto.jobs);

    std::vector<RunRow> rows;
    std::string trace;
    const std::string family = std::filesystem::path(a.file).stem().string();
    for (const auto& r : records) {
        rows.push_back(RunRow{family, n, tau, spec, r.seed, r.rounds, r.completed});
        if (a.trace) trace += trace_lines(r);
    }
    if (a.trace) write_text_file(*a.trace, trace);
    emit(a.out, to_csv(rows), out);
    return kExitOk;
}

int cmd_sweep(const SweepArgs& a, std::ostream& out) {
    if (a.sizes.empty()) throw UsageError("--sizes needs at least one size");

    ExperimentSpec spec;
    spec.family = *parse_family(a.family);
    spec.sizes = a.sizes;
    spec.params.delta = a.delta;
    spec.params.p = a.p;
    spec.params.seed = a.graph_seed;
    spec.protocol = a.proto.spec();
    spec.trials = a.proto.trials;
    spec.seed_base = a.proto.seed;
    spec.max_rounds = a.proto.max_rounds;
    spec.tau = a.proto.tau ? parse_tau(*a.proto.tau) : Stability::unbounded();
    spec.dynamics = *parse_dynamics(a.proto.dynamics.value_or("static"));
    spec.jobs = a.proto.jobs;

    const ExperimentTable table = run_experiment(spec);
    std::string csv = to_csv(table.rows);

    ordered_json summary;
    summary["points"] = ordered_json::array();
    for (const auto& p : table.points) summary["points"].push_back(ordered_json::parse(summary_json(p)));
    if (a.fit) {
        std::vector<double> xs, ys;
        for (const auto& p : table.points) {
            xs.push_back(static_cast<double>(p.n));
            ys.push_back(p.median);
        }
        const double exponent = fit_power_law(xs, ys);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", exponent);
        csv += std::string("# exponent,") + buf + "\n";
        summary["exponent"] = exponent;
    }
    emit(a.out, csv, out);
    emit(a.summary, summary.dump() + "\n", out);
    return kExitOk;
}

bool is_usage_error(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::InvalidParams:
    case ErrorKind::InvalidSpec:
    case ErrorKind::InvalidEdge:
    case ErrorKind::TooLargeForExact:
        return true;
    default:
        return false;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rumor spreading in the mobile telephone model", "mgs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.config_formatter(std::make_shared<JsonConfig>());
    app.set_config("--config", "", "JSON file with default flag values");
    app.allow_config_extras(CLI::config_extras_mode::error);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a graph file");
    gen_cmd->add_option("--family", gen.family, "Graph family")->required()->check(CLI::IsMember(kFamilies));
    gen_cmd->add_option("--n", gen.n, "Node count");
    gen_cmd->add_option("--delta", gen.delta, "gstar: center clique size");
    gen_cmd->add_option("--Delta", gen.Delta, "gstar: number of points");
    gen_cmd->add_option("--p", gen.p, "gnp: edge probability");
    gen_cmd->add_option("--seed", gen.seed, "gnp draws and permute dynamics");
    gen_cmd->add_option("--tau", gen.tau, "Write a dynamic file with this stability");
    gen_cmd->add_option("--dynamics", gen.dynamics, "Write a dynamic file with this model")
        ->check(CLI::IsMember(kGeneratedDynamics));
    gen_cmd->add_option("--out", gen.out, "Output path (default stdout)");

    AnalyzeArgs analyze;
    auto* analyze_cmd = app.add_subcommand("analyze", "Report expansion metrics of a graph file");
    analyze_cmd->add_option("file", analyze.file, "Graph or dynamic graph file")->required();
    analyze_cmd->add_flag("--alpha", analyze.alpha, "Vertex expansion");
    analyze_cmd->add_flag("--phi", analyze.phi, "Conductance");
    analyze_cmd->add_flag("--gamma", analyze.gamma, "Bridge matching ratio");
    analyze_cmd->add_flag("--exact", analyze.exact, "Exhaustive enumeration only");
    analyze_cmd->add_option("--sample", analyze.sample, "Estimate from K sampled subsets")
        ->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--seed", analyze.seed, "Sampling seed");
    analyze_cmd->add_option("--horizon", analyze.horizon, "Rounds covered for dynamic files")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analyze_cmd->add_option("--out", analyze.out, "Output path (default stdout)");

    SimulateArgs simulate;
    auto* simulate_cmd = app.add_subcommand("simulate", "Run trials on a graph file and write CSV");
    simulate_cmd->add_option("file", simulate.file, "Graph or dynamic graph file")->required();
    add_protocol_flags(simulate_cmd, simulate.proto);
    simulate_cmd->add_option("--source", simulate.source, "Node holding the rumor initially")->capture_default_str();
    simulate_cmd->add_option("--trace", simulate.trace, "Write per-round JSON lines here");
    simulate_cmd->add_option("--out", simulate.out, "CSV path (default stdout)");

    SweepArgs sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Run a protocol over a family of graph sizes");
    sweep_cmd->add_option("--family", sweep.family, "Graph family")->required()->check(CLI::IsMember(kFamilies));
    sweep_cmd->add_option("--sizes", sweep.sizes, "Comma-separated sizes (Delta values for gstar)")
        ->required()
        ->delimiter(',');
    sweep_cmd->add_option("--delta", sweep.delta, "gstar: center clique size")->capture_default_str();
    sweep_cmd->add_option("--p", sweep.p, "gnp: edge probability");
    sweep_cmd->add_option("--graph-seed", sweep.graph_seed, "gnp: graph seed");
    add_protocol_flags(sweep_cmd, sweep.proto);
    sweep_cmd->add_flag("--fit", sweep.fit, "Fit a power law to the median rounds");
    sweep_cmd->add_option("--out", sweep.out, "CSV path (default stdout)");
    sweep_cmd->add_option("--summary", sweep.summary, "Summary JSON path (default stdout)");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*gen_cmd) return cmd_gen(gen, out);
        if (*analyze_cmd) return cmd_analyze(analyze, out);
        if (*simulate_cmd) return cmd_simulate(simulate, out);
        if (*sweep_cmd) return cmd_sweep(sweep, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return is_usage_error(e.kind()) ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}

} // namespace mgs::cli
