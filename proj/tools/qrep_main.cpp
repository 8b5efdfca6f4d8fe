// qrep — repeater key-rate calculator CLI.
//
// Subcommands: evaluate, optimize, scan, partition, ccimpact, simulate,
// rerun. Every file output embeds a manifest (full resolved parameters,
// tool version, seed, timestamp) from which `rerun` reproduces the file
// byte for byte. The manifest timestamp stays empty unless --timestamp is
// given, so identical invocations produce identical bytes.
//
// Exit codes: 0 success, 1 usage error, 2 runtime error.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qrep/mc_waiting_time.hpp"
#include "qrep/optimizer.hpp"
#include "qrep/repeater_rate.hpp"
#include "qrep/secret_key.hpp"
#include "qrep/version.hpp"

using nlohmann::json;
using namespace qrep;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// 6 significant digits, scientific, locale-independent.
std::string sci(double v) {
    char buf[48];
    auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 5);
    return std::string(buf, res.ptr);
}

std::string join(const std::vector<std::string>& parts, char sep) {
    std::string out;
    for (size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, sep)) out.push_back(token);
    return out;
}

// ---------------------------------------------------------------------------
// Parameter blocks. Everything needed to reproduce a run lives here and is
// serialized into the manifest.

struct CommonParams {
    double length_km = 600.0;
    double attenuation = 0.17;
    double fiber_speed = 2e5;
    double eta = 1.0;
    std::string input = "depolarized";
    bool no_cc = false;
    int threads = 0;
    std::string timestamp;
};

// The worker count is execution environment, not a computational input:
// results are identical for any thread count, so the manifest omits it to
// keep outputs byte-identical across machines.
void to_json(json& j, const CommonParams& p) {
    j = json{{"L", p.length_km}, {"alpha", p.attenuation}, {"c", p.fiber_speed},
             {"eta", p.eta},     {"input", p.input},       {"no_cc", p.no_cc}};
}

void from_json(const json& j, CommonParams& p) {
    j.at("L").get_to(p.length_km);
    j.at("alpha").get_to(p.attenuation);
    j.at("c").get_to(p.fiber_speed);
    j.at("eta").get_to(p.eta);
    j.at("input").get_to(p.input);
    j.at("no_cc").get_to(p.no_cc);
    p.threads = 0;
}

CcMode cc_mode_of(const CommonParams& p) {
    return p.no_cc ? CcMode::kNoCc : CcMode::kWithCc;
}

struct EvaluateParams {
    CommonParams common;
    double f0 = 0.9;
    double p_gate = 1.0;
    int levels = 0;
    std::string protocol = "deutsch";
    std::string k;  // comma list; empty means all zeros
};

void to_json(json& j, const EvaluateParams& p) {
    j = json{{"common", p.common}, {"F0", p.f0},             {"pG", p.p_gate},
             {"N", p.levels},      {"protocol", p.protocol}, {"k", p.k}};
}

void from_json(const json& j, EvaluateParams& p) {
    j.at("common").get_to(p.common);
    j.at("F0").get_to(p.f0);
    j.at("pG").get_to(p.p_gate);
    j.at("N").get_to(p.levels);
    j.at("protocol").get_to(p.protocol);
    j.at("k").get_to(p.k);
}

struct OptimizeParams {
    CommonParams common;
    double f0 = 0.9;
    double p_gate = 1.0;
    int max_level = 6;
    int max_rounds = 5;
    std::string strategies = "gamma";
    std::string protocols = "deutsch,duer,none";
};

void to_json(json& j, const OptimizeParams& p) {
    j = json{{"common", p.common},   {"F0", p.f0},
             {"pG", p.p_gate},       {"nmax", p.max_level},
             {"kmax", p.max_rounds}, {"strategies", p.strategies},
             {"protocols", p.protocols}};
}

void from_json(const json& j, OptimizeParams& p) {
    j.at("common").get_to(p.common);
    j.at("F0").get_to(p.f0);
    j.at("pG").get_to(p.p_gate);
    j.at("nmax").get_to(p.max_level);
    j.at("kmax").get_to(p.max_rounds);
    j.at("strategies").get_to(p.strategies);
    j.at("protocols").get_to(p.protocols);
}

struct ScanParams {
    CommonParams common;
    std::string f0_range = "0.7:1.0:31";
    std::string pg_range = "0.92:1.0:31";
    int max_level = 6;
    int max_rounds = 5;
    std::string strategies = "alpha,beta";
    std::string protocols = "deutsch,duer,none";
    double cutoff = kGridKeyRateCutoff;
};

void to_json(json& j, const ScanParams& p) {
    j = json{{"common", p.common},   {"F0", p.f0_range},
             {"pG", p.pg_range},     {"nmax", p.max_level},
             {"kmax", p.max_rounds}, {"strategies", p.strategies},
             {"protocols", p.protocols}, {"cutoff", p.cutoff}};
}

void from_json(const json& j, ScanParams& p) {
    j.at("common").get_to(p.common);
    j.at("F0").get_to(p.f0_range);
    j.at("pG").get_to(p.pg_range);
    j.at("nmax").get_to(p.max_level);
    j.at("kmax").get_to(p.max_rounds);
    j.at("strategies").get_to(p.strategies);
    j.at("protocols").get_to(p.protocols);
    j.at("cutoff").get_to(p.cutoff);
}

struct PartitionParams {
    OptimizeParams base;
    int memories = 1;
};

void to_json(json& j, const PartitionParams& p) {
    j = json{{"base", p.base}, {"M", p.memories}};
}

void from_json(const json& j, PartitionParams& p) {
    j.at("base").get_to(p.base);
    j.at("M").get_to(p.memories);
}

struct SimulateParams {
    EvaluateParams base;
    std::int64_t trials = 100000;
    std::uint64_t seed = 1;
};

void to_json(json& j, const SimulateParams& p) {
    j = json{{"base", p.base}, {"trials", p.trials}, {"seed", p.seed}};
}

void from_json(const json& j, SimulateParams& p) {
    j.at("base").get_to(p.base);
    j.at("trials").get_to(p.trials);
    j.at("seed").get_to(p.seed);
}

// ---------------------------------------------------------------------------
// Manifest and output plumbing.

json make_manifest(const std::string& command, const json& params, std::uint64_t seed,
                   const std::string& timestamp) {
    return json{{"tool", "qrep"}, {"version", kVersion}, {"command", command},
                {"seed", seed},   {"timestamp", timestamp}, {"params", params}};
}

struct OutputSpec {
    std::string path;    // empty: stdout only
    std::string format;  // "csv" or "json"
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("failed writing output file: " + path);
}

std::string render_csv(const json& manifest, const std::vector<std::string>& header,
                       const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream out;
    out << "# manifest " << manifest.dump() << "\n";
    out << join(header, ',') << "\n";
    for (const auto& row : rows) out << join(row, ',') << "\n";
    return out.str();
}

std::string render_json(const json& manifest, const json& payload) {
    json doc{{"manifest", manifest}};
    doc.update(payload);
    return doc.dump(2) + "\n";
}

void emit(const OutputSpec& spec, const json& manifest, const json& payload,
          const std::vector<std::string>& csv_header,
          const std::vector<std::vector<std::string>>& csv_rows) {
    if (spec.path.empty()) return;
    if (spec.format != "csv" && spec.format != "json") {
        throw UsageError("unknown format: " + spec.format);
    }
    const std::string content = spec.format == "csv" ? render_csv(manifest, csv_header, csv_rows)
                                                     : render_json(manifest, payload);
    write_file(spec.path, content);
}

// ---------------------------------------------------------------------------
// Translation from parameter blocks to library inputs.

LinkParams link_of(const CommonParams& p, int levels) {
    LinkParams link{p.length_km, levels, p.attenuation, p.fiber_speed};
    validate(link);
    return link;
}

RepeaterConfig config_of(const EvaluateParams& p) {
    RepeaterConfig cfg;
    cfg.protocol = protocol_from_string(p.protocol);
    cfg.link = link_of(p.common, p.levels);
    cfg.rounds = p.k.empty() ? DistillationVector::zeros(p.levels) : DistillationVector::parse(p.k);
    cfg.noise = NoiseParams{p.p_gate, p.common.eta};
    cfg.input_kind = input_kind_from_string(p.common.input);
    cfg.initial_fidelity = p.f0;
    cfg.cc_mode = cc_mode_of(p.common);
    if (cfg.rounds.levels() != p.levels) {
        throw UsageError("distillation vector length must be N+1");
    }
    if (cfg.protocol == Protocol::kNone && !cfg.rounds.all_zero()) {
        throw UsageError("protocol none requires an all-zero distillation vector");
    }
    return cfg;
}

SearchSpace space_of(const OptimizeParams& p) {
    SearchSpace space;
    space.max_level = p.max_level;
    space.max_rounds = p.max_rounds;
    space.cc_mode = cc_mode_of(p.common);
    space.strategies.clear();
    for (const auto& name : split(p.strategies, ',')) {
        space.strategies.push_back(strategy_from_string(name));
    }
    space.protocols.clear();
    for (const auto& name : split(p.protocols, ',')) {
        space.protocols.push_back(protocol_from_string(name));
    }
    validate(space);
    return space;
}

OptimizeInputs inputs_of(const OptimizeParams& p) {
    OptimizeInputs in;
    in.initial_fidelity = p.f0;
    in.input_kind = input_kind_from_string(p.common.input);
    in.noise = NoiseParams{p.p_gate, p.common.eta};
    in.link = link_of(p.common, 0);
    return in;
}

std::vector<double> parse_axis(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() != 3) throw UsageError("range must be lo:hi:count, got: " + text);
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int count = std::stoi(parts[2]);
    if (count < 1) throw UsageError("range count must be >= 1");
    std::vector<double> values(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
        values[static_cast<size_t>(i)] =
            count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
    }
    return values;
}

// ---------------------------------------------------------------------------
// Payload builders.

json trace_to_json(const ProbabilityTrace& trace) {
    json levels = json::array();
    for (int n = 0; n <= trace.levels(); ++n) {
        const auto un = static_cast<size_t>(n);
        levels.push_back(json{{"level", n},
                              {"swap_success", trace.swap_success[un]},
                              {"entry_state",
                               {trace.entry_state[un].a, trace.entry_state[un].b,
                                trace.entry_state[un].c, trace.entry_state[un].d}},
                              {"distill_success", trace.distill_success[un]}});
    }
    return json{{"p0", trace.p0},
                {"levels", levels},
                {"final_state",
                 {trace.final_state.a, trace.final_state.b, trace.final_state.c,
                  trace.final_state.d}}};
}

json candidate_to_json(const Candidate& cand) {
    return json{{"protocol", to_string(cand.protocol)},
                {"N", cand.levels},
                {"k", cand.rounds.to_string()},
                {"strategy", to_string(cand.strategy)},
                {"M", cand.result.memories},
                {"key_rate", cand.result.key_rate},
                {"repeater_rate", cand.result.repeater_rate},
                {"secret_fraction", cand.result.secret_fraction}};
}

std::vector<std::string> candidate_to_csv_row(double f0, double pg, const Candidate& cand,
                                              bool below_cutoff) {
    return {sci(f0),
            sci(pg),
            sci(cand.result.key_rate),
            to_string(cand.protocol),
            std::to_string(cand.levels),
            cand.rounds.to_string(';'),
            to_string(cand.strategy),
            std::to_string(cand.result.memories),
            below_cutoff ? "1" : "0"};
}

const std::vector<std::string> kScanHeader = {"F0", "pG",       "K", "protocol", "N",
                                              "k",  "strategy", "M", "below_cutoff"};

// ---------------------------------------------------------------------------
// Command runners. Each takes fully resolved params (also invoked by rerun).

void run_evaluate(const EvaluateParams& p, const OutputSpec& out) {
    const RepeaterConfig cfg = config_of(p);
    const EvalResult res = evaluate(cfg);

    std::cout << "config: protocol=" << to_string(cfg.protocol) << " F0=" << p.f0
              << " pG=" << p.p_gate << " eta=" << p.common.eta << " L=" << p.common.length_km
              << " km N=" << p.levels << " k=(" << cfg.rounds.to_string()
              << ") input=" << p.common.input << (p.common.no_cc ? " no-cc" : "") << "\n";
    std::cout << "link: L0=" << cfg.link.segment_length_km() << " km T0=" << cfg.link.time_unit_s()
              << " s P0=" << cfg.link.p0() << "\n";
    std::cout << "key_rate         K = " << res.key_rate << " bits/s per memory\n";
    std::cout << "repeater_rate    R = " << res.repeater_rate << " pairs/s\n";
    std::cout << "secret_fraction  r = " << res.secret_fraction << " bits/pair\n";
    std::cout << "memories         M = " << res.memories << "\n";
    std::cout << "final state (a,b,c,d) = " << to_string(res.trace.final_state) << "\n";
    for (int n = 0; n <= res.trace.levels(); ++n) {
        std::cout << "level " << n << ": P_ES=" << res.trace.swap_success[static_cast<size_t>(n)];
        const auto& pd = res.trace.distill_success[static_cast<size_t>(n)];
        for (size_t i = 0; i < pd.size(); ++i) {
            std::cout << " P_D(" << (i + 1) << ")=" << pd[i];
        }
        std::cout << "\n";
    }

    const json manifest = make_manifest("evaluate", p, 0, p.common.timestamp);
    const json payload{{"result",
                        {{"key_rate", res.key_rate},
                         {"repeater_rate", res.repeater_rate},
                         {"secret_fraction", res.secret_fraction},
                         {"memories", res.memories}}},
                       {"trace", trace_to_json(res.trace)}};
    const Candidate as_candidate{cfg.protocol, p.levels, cfg.rounds,
                                 classify_strategy(cfg.rounds), res};
    emit(out, manifest, payload, kScanHeader,
         {candidate_to_csv_row(p.f0, p.p_gate, as_candidate, false)});
}

void run_optimize(const OptimizeParams& p, const OutputSpec& out) {
    const Candidate best = optimize(inputs_of(p), space_of(p));
    std::cout << "best: K=" << best.result.key_rate << " protocol=" << to_string(best.protocol)
              << " N=" << best.levels << " k=(" << best.rounds.to_string() << ")"
              << " strategy=" << to_string(best.strategy) << " M=" << best.result.memories
              << (best.has_key() ? "" : "  [no key]") << "\n";
    const json manifest = make_manifest("optimize", p, 0, p.common.timestamp);
    emit(out, manifest, json{{"best", candidate_to_json(best)}}, kScanHeader,
         {candidate_to_csv_row(p.f0, p.p_gate, best, !best.has_key())});
}

void run_scan(const ScanParams& p, const OutputSpec& out) {
    OptimizeParams base;
    base.common = p.common;
    base.max_level = p.max_level;
    base.max_rounds = p.max_rounds;
    base.strategies = p.strategies;
    base.protocols = p.protocols;

    const auto f0_values = parse_axis(p.f0_range);
    const auto pg_values = parse_axis(p.pg_range);
    const auto grid = grid_scan(f0_values, pg_values, inputs_of(base), space_of(base), p.cutoff,
                                p.common.threads);

    std::vector<std::vector<std::string>> rows;
    json cells = json::array();
    for (const auto& cell : grid) {
        rows.push_back(
            candidate_to_csv_row(cell.initial_fidelity, cell.p_gate, cell.best, cell.below_cutoff));
        json c = candidate_to_json(cell.best);
        c["F0"] = cell.initial_fidelity;
        c["pG"] = cell.p_gate;
        c["below_cutoff"] = cell.below_cutoff;
        cells.push_back(c);
    }
    std::cout << "scan: " << grid.size() << " cells (" << f0_values.size() << " x "
              << pg_values.size() << ")\n";
    const json manifest = make_manifest("scan", p, 0, p.common.timestamp);
    emit(out, manifest, json{{"cells", cells}}, kScanHeader, rows);
}

void run_partition(const PartitionParams& p, const OutputSpec& out) {
    const PartitionResult res =
        optimize_fixed_memory(p.memories, inputs_of(p.base), space_of(p.base));

    std::cout << "M=" << p.memories << " best K=" << res.best.key_rate << " partition:";
    for (size_t m = 0; m < res.best.multiplicity.size(); ++m) {
        if (res.best.multiplicity[m]) std::cout << " " << res.best.multiplicity[m] << "x" << (m + 1);
    }
    std::cout << "\n";
    json sizes = json::array();
    std::vector<std::vector<std::string>> rows;
    for (int m = 1; m <= p.memories; ++m) {
        const auto& cand = res.best_per_size[static_cast<size_t>(m - 1)];
        if (!cand) continue;
        json entry = candidate_to_json(*cand);
        entry["setups"] = res.best.multiplicity[static_cast<size_t>(m - 1)];
        sizes.push_back(entry);
        if (res.best.multiplicity[static_cast<size_t>(m - 1)] > 0) {
            std::cout << "  size " << m << ": k=(" << cand->rounds.to_string() << ") "
                      << to_string(cand->protocol) << " N=" << cand->levels
                      << " K_m=" << cand->result.key_rate << "\n";
        }
        rows.push_back(candidate_to_csv_row(p.base.f0, p.base.p_gate, *cand, !cand->has_key()));
    }
    const json manifest = make_manifest("partition", p, 0, p.base.common.timestamp);
    emit(out, manifest,
         json{{"M", p.memories},
              {"key_rate", res.best.key_rate},
              {"multiplicity", res.best.multiplicity},
              {"per_size", sizes}},
         kScanHeader, rows);
}

void run_ccimpact(const OptimizeParams& p, const OutputSpec& out) {
    const CcImpactResult res = cc_impact(inputs_of(p), space_of(p));
    std::cout << "with CC:    K=" << res.with_cc.result.key_rate << " at N=" << res.with_cc.levels
              << " k=(" << res.with_cc.rounds.to_string() << ") "
              << to_string(res.with_cc.protocol) << "\n";
    std::cout << "without CC: K=" << res.no_cc.result.key_rate << " at N=" << res.no_cc.levels
              << " k=(" << res.no_cc.rounds.to_string() << ") " << to_string(res.no_cc.protocol)
              << "\n";
    std::cout << "rel_change = " << res.rel_change << "\n";
    const json manifest = make_manifest("ccimpact", p, 0, p.common.timestamp);
    emit(out, manifest,
         json{{"rel_change", res.rel_change},
              {"with_cc", candidate_to_json(res.with_cc)},
              {"no_cc", candidate_to_json(res.no_cc)}},
         {"rel_change", "K_cc", "K_nc"},
         {{sci(res.rel_change), sci(res.with_cc.result.key_rate),
           sci(res.no_cc.result.key_rate)}});
}

void run_simulate(const SimulateParams& p, const OutputSpec& out) {
    const RepeaterConfig cfg = config_of(p.base);
    const ProbabilityTrace trace = chain_trace(cfg);

    SimConfig sim;
    sim.trace = trace;
    sim.rounds = cfg.rounds;
    sim.levels = cfg.link.nesting_levels;
    sim.protocol = cfg.protocol == Protocol::kNone ? Protocol::kDeutsch : cfg.protocol;
    sim.cc_mode = cfg.cc_mode;
    sim.trials = p.trials;
    sim.seed = p.seed;
    sim.threads = p.base.common.threads;
    const SimResult res = simulate_tau(sim);
    const double analytic = tau_recurrence(sim.protocol, trace, cfg.rounds, sim.levels, cfg.cc_mode);
    const double gap = (res.mean_tau - analytic) / analytic;

    std::cout << "simulated tau = " << res.mean_tau << " +- " << res.std_error << " (units of T0, "
              << res.trials << " trials)\n";
    std::cout << "analytic  tau = " << analytic << "  relative gap = " << gap << "\n";

    const json manifest = make_manifest("simulate", p, p.seed, p.base.common.timestamp);
    emit(out, manifest,
         json{{"mean_tau", res.mean_tau},
              {"std_error", res.std_error},
              {"trials", res.trials},
              {"analytic_tau", analytic},
              {"relative_gap", gap}},
         {"mean_tau", "std_error", "trials", "analytic_tau", "relative_gap"},
         {{sci(res.mean_tau), sci(res.std_error), std::to_string(res.trials), sci(analytic),
           sci(gap)}});
}

// Re-executes the command recorded in a previous output file.
void run_rerun(const std::string& from, OutputSpec out) {
    std::ifstream in(from, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + from);
    json manifest;
    std::string first_line;
    if (!std::getline(in, first_line)) throw std::runtime_error("empty input file: " + from);
    const bool was_csv = first_line.rfind("# manifest ", 0) == 0;
    if (was_csv) {
        manifest = json::parse(first_line.substr(11));
    } else {
        in.seekg(0);
        json doc = json::parse(in);
        if (!doc.contains("manifest")) throw UsageError("no manifest found in " + from);
        manifest = doc.at("manifest");
    }
    const std::string command = manifest.at("command").get<std::string>();
    const json& params = manifest.at("params");
    if (out.format.empty()) out.format = was_csv ? "csv" : "json";

    if (command == "evaluate") {
        run_evaluate(params.get<EvaluateParams>(), out);
    } else if (command == "optimize") {
        run_optimize(params.get<OptimizeParams>(), out);
    } else if (command == "scan") {
        run_scan(params.get<ScanParams>(), out);
    } else if (command == "partition") {
        run_partition(params.get<PartitionParams>(), out);
    } else if (command == "ccimpact") {
        run_ccimpact(params.get<OptimizeParams>(), out);
    } else if (command == "simulate") {
        run_simulate(params.get<SimulateParams>(), out);
    } else {
        throw UsageError("unknown command in manifest: " + command);
    }
}

// ---------------------------------------------------------------------------

void add_common_flags(CLI::App* cmd, CommonParams& p) {
    cmd->add_option("--L", p.length_km, "total distance in km")->capture_default_str();
    cmd->add_option("--alpha", p.attenuation, "fiber attenuation in dB/km")->capture_default_str();
    cmd->add_option("--c", p.fiber_speed, "fiber light speed in km/s")->capture_default_str();
    cmd->add_option("--eta", p.eta, "detector efficiency")->capture_default_str();
    cmd->add_option("--input", p.input, "input state family: depolarized|binary")
        ->capture_default_str();
    cmd->add_flag("--no-cc", p.no_cc, "drop classical-communication acknowledgment times");
    cmd->add_option("--threads", p.threads, "worker threads (0 = hardware)")
        ->capture_default_str();
    cmd->add_option("--timestamp", p.timestamp,
                    "timestamp string echoed into the manifest (default empty)");
}

void add_output_flags(CLI::App* cmd, OutputSpec& out, const std::string& default_format) {
    cmd->add_option("--out", out.path, "output file path");
    out.format = default_format;
    cmd->add_option("--format", out.format, "output format: csv|json")->capture_default_str();
}

void add_optimize_flags(CLI::App* cmd, OptimizeParams& p) {
    add_common_flags(cmd, p.common);
    cmd->add_option("--F0", p.f0, "initial fidelity")->required();
    cmd->add_option("--pG", p.p_gate, "gate quality")->required();
    cmd->add_option("--nmax", p.max_level, "largest nesting level searched")
        ->capture_default_str();
    cmd->add_option("--kmax", p.max_rounds, "per-level cap on distillation rounds")
        ->capture_default_str();
    cmd->add_option("--strategy", p.strategies, "comma list of alpha|beta|gamma")
        ->capture_default_str();
    cmd->add_option("--protocol", p.protocols, "comma list of deutsch|duer|none")
        ->capture_default_str();
}

int dispatch(int argc, char** argv) {
    CLI::App app{"qrep: nested-repeater secret key rates with entanglement distillation"};
    app.require_subcommand(1);
    // Config keys live in a section named after the subcommand, e.g.
    //   [evaluate]
    //   F0=0.9
    // and are overridden by command-line flags.
    app.set_config("--config", "", "key-value config file (flags override it)");
    app.set_version_flag("--version", std::string("qrep ") + kVersion);

    EvaluateParams eval_params;
    OutputSpec eval_out;
    auto* eval_cmd = app.add_subcommand("evaluate", "evaluate one repeater configuration");
    add_common_flags(eval_cmd, eval_params.common);
    eval_cmd->add_option("--F0", eval_params.f0, "initial fidelity")->required();
    eval_cmd->add_option("--pG", eval_params.p_gate, "gate quality")->required();
    eval_cmd->add_option("--N", eval_params.levels, "nesting level")->required();
    eval_cmd->add_option("--k", eval_params.k, "distillation vector, comma list (default zeros)");
    eval_cmd->add_option("--protocol", eval_params.protocol, "deutsch|duer|none")
        ->capture_default_str();
    add_output_flags(eval_cmd, eval_out, "json");

    OptimizeParams opt_params;
    OutputSpec opt_out;
    auto* opt_cmd = app.add_subcommand("optimize", "search the best configuration");
    add_optimize_flags(opt_cmd, opt_params);
    add_output_flags(opt_cmd, opt_out, "json");

    ScanParams scan_params;
    OutputSpec scan_out;
    auto* scan_cmd = app.add_subcommand("scan", "grid scan over F0 and pG");
    add_common_flags(scan_cmd, scan_params.common);
    scan_cmd->add_option("--F0", scan_params.f0_range, "F0 range lo:hi:count or scalar")
        ->capture_default_str();
    scan_cmd->add_option("--pG", scan_params.pg_range, "pG range lo:hi:count or scalar")
        ->capture_default_str();
    scan_cmd->add_option("--nmax", scan_params.max_level, "largest nesting level")
        ->capture_default_str();
    scan_cmd->add_option("--kmax", scan_params.max_rounds, "per-level rounds cap")
        ->capture_default_str();
    scan_cmd->add_option("--strategy", scan_params.strategies, "comma list of alpha|beta|gamma")
        ->capture_default_str();
    scan_cmd->add_option("--protocol", scan_params.protocols, "comma list of protocols")
        ->capture_default_str();
    scan_cmd->add_option("--cutoff", scan_params.cutoff, "below-cutoff threshold for K")
        ->capture_default_str();
    add_output_flags(scan_cmd, scan_out, "csv");

    PartitionParams part_params;
    OutputSpec part_out;
    auto* part_cmd = app.add_subcommand("partition", "optimal parallel setups for fixed memories");
    add_optimize_flags(part_cmd, part_params.base);
    part_cmd->add_option("--M", part_params.memories, "total memories per half node")->required();
    add_output_flags(part_cmd, part_out, "json");

    OptimizeParams cc_params;
    OutputSpec cc_out;
    auto* cc_cmd =
        app.add_subcommand("ccimpact", "relative change of K without classical communication");
    add_optimize_flags(cc_cmd, cc_params);
    add_output_flags(cc_cmd, cc_out, "json");

    SimulateParams sim_params;
    OutputSpec sim_out;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo check of the waiting time");
    add_common_flags(sim_cmd, sim_params.base.common);
    sim_cmd->add_option("--F0", sim_params.base.f0, "initial fidelity")->required();
    sim_cmd->add_option("--pG", sim_params.base.p_gate, "gate quality")->required();
    sim_cmd->add_option("--N", sim_params.base.levels, "nesting level")->required();
    sim_cmd->add_option("--k", sim_params.base.k, "distillation vector (default zeros)");
    sim_cmd->add_option("--protocol", sim_params.base.protocol, "deutsch|duer|none")
        ->capture_default_str();
    sim_cmd->add_option("--trials", sim_params.trials, "Monte Carlo trials")
        ->capture_default_str();
    sim_cmd->add_option("--seed", sim_params.seed, "RNG seed")->capture_default_str();
    add_output_flags(sim_cmd, sim_out, "json");

    std::string rerun_from;
    OutputSpec rerun_out;
    auto* rerun_cmd = app.add_subcommand("rerun", "re-execute the manifest of an output file");
    rerun_cmd->add_option("--from", rerun_from, "previous output file (csv or json)")->required();
    rerun_cmd->add_option("--out", rerun_out.path, "output file path");
    rerun_cmd->add_option("--format", rerun_out.format, "output format: csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (eval_cmd->parsed()) run_evaluate(eval_params, eval_out);
        if (opt_cmd->parsed()) run_optimize(opt_params, opt_out);
        if (scan_cmd->parsed()) run_scan(scan_params, scan_out);
        if (part_cmd->parsed()) run_partition(part_params, part_out);
        if (cc_cmd->parsed()) run_ccimpact(cc_params, cc_out);
        if (sim_cmd->parsed()) run_simulate(sim_params, sim_out);
        if (rerun_cmd->parsed()) run_rerun(rerun_from, rerun_out);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    return dispatch(argc, argv);
}
