#include "ctxq/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>

#include "ctxq/classical.hpp"
#include "ctxq/context.hpp"
#include "ctxq/measures.hpp"
#include "ctxq/poset.hpp"
#include "ctxq/quantum.hpp"
#include "ctxq/sims.hpp"

#ifndef CTXQ_VERSION
#define CTXQ_VERSION "0.0.0"
#endif

namespace ctxq::cli {

namespace {

using nlohmann::json;

struct RunConfig {
    std::string command;
    std::uint64_t seed = kDefaultSeed;
    std::size_t trials = 10000;
    double tolerance = kContextTolerance;
    double epsilon = kDefaultEpsilon;
    std::string out_path;
    std::string format;  // empty: command default
    std::size_t cap = kDefaultEnumerationCap;

    std::string poset_file;
    std::string dot_path;
    std::string basis_a = "z";
    std::string basis_b = "x";
    double sweep_start = 0.0;
    double sweep_stop = std::numbers::pi / 2.0;
    double sweep_step = std::numbers::pi / 36.0;
    std::size_t n_boxes = 3;
    long long ball = -1;
    std::string order;
    std::string input = "z";
    std::string axes = "z,x,z,x";
};

struct CommandOutput {
    json payload;
    std::string csv;  // filled when the command supports CSV
};

std::string num12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(text);
    while (std::getline(is, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_atomically(const std::string& path, const std::string& content) {
    const std::filesystem::path target(path);
    auto tmp = target;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw InputError("cannot write '" + tmp.string() + "'");
        os << content;
        if (!os) throw InputError("failed writing '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, target);
}

json subset_json(const ElementSubset& s) { return json(std::vector<std::string>(s.begin(), s.end())); }

json verdict_json(const DeterminismVerdict& v) {
    return {{"physically_deterministic", v.physically_deterministic},
            {"approximately_deterministic", v.approximately_deterministic},
            {"steps_to_certainty", v.steps_to_certainty ? json(*v.steps_to_certainty) : json(nullptr)},
            {"epsilon", v.epsilon}};
}

json axiom_json(const AxiomCheck& c) {
    return {{"passed", c.passed}, {"samples", c.samples}, {"witness", c.witness ? json(*c.witness) : json(nullptr)}};
}

json axiom_report_json(const AxiomReport& r) {
    return {{"expansibility", axiom_json(r.expansibility)},
            {"symmetry", axiom_json(r.symmetry)},
            {"subadditivity", axiom_json(r.subadditivity)},
            {"additivity", axiom_json(r.additivity)},
            {"normalization", axiom_json(r.normalization)},
            {"monotone_on_bayesian", axiom_json(r.monotone_on_bayesian)},
            {"all_passed", r.all_passed()}};
}

std::string state_components(std::span<const double> v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + num12(v[i]);
    return s;
}

constexpr const char* kTraceHeader = "step,box_or_axis,outcome,entropy_bits,state_components\n";

// ---------------------------------------------------------------------------

CommandOutput cmd_axioms(const RunConfig& cfg, int& status) {
    CommandOutput out;
    const std::vector<MeasurementFn> fns{MeasurementFn::shannon(), MeasurementFn::hartley(),
                                         MeasurementFn::linear_combo(0.5, 0.5)};
    json reports = json::object();
    for (const auto& f : fns) {
        const auto r = verify_axioms(f, cfg.trials, cfg.seed);
        reports[f.name()] = axiom_report_json(r);
        if (f.kind() == MeasurementFn::Kind::Shannon && !r.all_passed()) status = kExitCheckFailed;
    }
    out.payload = {{"samples", cfg.trials}, {"measures", reports}};
    return out;
}

FinitePoset load_poset(const std::string& path) {
    const auto doc = read_json_file(path);
    try {
        auto elements = doc.at("elements").get<std::vector<std::string>>();
        std::vector<std::pair<Label, Label>> covers;
        for (const auto& pair : doc.value("covers", json::array())) {
            if (!pair.is_array() || pair.size() != 2) throw InputError("each cover must be a two-element array");
            covers.emplace_back(pair[0].get<std::string>(), pair[1].get<std::string>());
        }
        return FinitePoset::from_cover_relations(std::move(elements), covers);
    } catch (const json::exception& e) {
        throw InputError("malformed poset file '" + path + "': " + e.what());
    }
}

CommandOutput cmd_poset(const RunConfig& cfg) {
    const auto p = load_poset(cfg.poset_file);
    if (!cfg.dot_path.empty()) write_atomically(cfg.dot_path, p.to_dot());

    const auto dcpo = is_dcpo(p, cfg.cap);
    const auto rel = ApproximationRelation::compute(p, cfg.cap);
    const auto prop = check_way_below_extension(p, cfg.cap);

    json matrix = json::array();
    ElementSubset compact;
    for (std::size_t i = 0; i < p.size(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < p.size(); ++j) row.push_back(rel.way_below(i, j) ? 1 : 0);
        matrix.push_back(row);
        if (rel.way_below(i, i)) compact.insert(p.label(i));
    }
    json covers = json::array();
    for (const auto& [a, b] : p.covers()) covers.push_back({a, b});

    CommandOutput out;
    out.payload = {
        {"elements", p.elements()},
        {"covers", covers},
        {"maximal_elements", subset_json(maximal_elements(p))},
        {"compact_elements", subset_json(compact)},
        {"way_below", matrix},
        {"is_dcpo", dcpo.is_dcpo},
        {"directed_subsets_checked", dcpo.directed_subsets_checked},
        {"dcpo_witness", dcpo.witness ? subset_json(*dcpo.witness) : json(nullptr)},
        {"way_below_extension",
         {{"holds", prop.holds},
          {"premises_checked", prop.premises_checked},
          {"counterexample", prop.counterexample ? json({prop.counterexample->rho, prop.counterexample->sigma,
                                                         prop.counterexample->tau})
                                                 : json(nullptr)}}},
    };
    return out;
}

NBasis load_basis(const std::string& text) {
    if (std::filesystem::is_regular_file(text)) {
        const auto doc = read_json_file(text);
        try {
            std::vector<std::vector<Amplitude>> cols;
            for (const auto& col : doc.at("columns")) {
                std::vector<Amplitude> c;
                for (const auto& v : col) {
                    if (v.is_array()) {
                        if (v.size() != 2) throw InputError("complex entries must be [re, im]");
                        c.emplace_back(v[0].get<double>(), v[1].get<double>());
                    } else {
                        c.emplace_back(v.get<double>(), 0.0);
                    }
                }
                cols.push_back(std::move(c));
            }
            return NBasis::from_columns(std::move(cols));
        } catch (const json::exception& e) {
            throw InputError("malformed basis file '" + text + "': " + e.what());
        }
    }
    return NBasis::from_qubit_axis(parse_axis(text));
}

CommandOutput cmd_context(const RunConfig& cfg) {
    const auto a = load_basis(cfg.basis_a);
    const auto b = load_basis(cfg.basis_b);
    auto report = contextual_distance(a, b);
    report.classification = classify(report.value_bits, report.sup_bits, cfg.tolerance);

    CommandOutput out;
    out.payload = {{"basis_a", cfg.basis_a},
                   {"basis_b", cfg.basis_b},
                   {"dimension", a.dim()},
                   {"value_bits", report.value_bits},
                   {"sup_bits", report.sup_bits},
                   {"normalized", report.normalized},
                   {"classification", to_string(report.classification)},
                   {"column_mean_bits", column_distance_bits(a, b)}};
    out.csv = "value_bits,sup_bits,normalized,classification\n" + num12(report.value_bits) + "," +
              num12(report.sup_bits) + "," + num12(report.normalized) + "," + to_string(report.classification) + "\n";
    return out;
}

CommandOutput cmd_sweep(const RunConfig& cfg) {
    if (!(cfg.sweep_step > 0.0) || cfg.sweep_stop < cfg.sweep_start) {
        throw ParameterOutOfRange("sweep needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::size_t>((cfg.sweep_stop - cfg.sweep_start) / cfg.sweep_step + 1e-9) + 1;
    std::vector<double> grid;
    for (std::size_t i = 0; i < count; ++i) {
        grid.push_back(std::min(cfg.sweep_start + static_cast<double>(i) * cfg.sweep_step, cfg.sweep_stop));
    }
    const auto curve = qubit_distance_curve(grid);
    CommandOutput out;
    json rows = json::array();
    out.csv = "theta_radians,value_bits\n";
    for (const auto& [theta, value] : curve) {
        rows.push_back({{"theta_radians", theta}, {"value_bits", value}});
        out.csv += num12(theta) + "," + num12(value) + "\n";
    }
    out.payload = {{"rows", rows}};
    return out;
}

std::vector<std::size_t> parse_indices(const std::string& text) {
    std::vector<std::size_t> out;
    for (const auto& item : split(text, ',')) {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            throw InvalidPermutation("not a box index: '" + item + "'");
        }
        if (pos != item.size() || item.front() == '-') throw InvalidPermutation("not a box index: '" + item + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

CommandOutput cmd_boxes(const RunConfig& cfg) {
    const std::size_t n = cfg.n_boxes;
    const std::size_t ball = cfg.ball < 0 ? n - 1 : static_cast<std::size_t>(cfg.ball);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (!cfg.order.empty()) order = parse_indices(cfg.order);

    const auto trace = boxes_experiment(n, ball, order);
    const auto verdict = determinism_check(trace, cfg.epsilon);

    CommandOutput out;
    json steps = json::array();
    out.csv = kTraceHeader;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& s = trace.steps[k];
        const auto probs = s.state.probs();
        steps.push_back({{"step", k},
                         {"opened_box", s.opened_box ? json(*s.opened_box) : json(nullptr)},
                         {"found", s.found},
                         {"state", std::vector<double>(probs.begin(), probs.end())},
                         {"entropy_bits", s.entropy_bits}});
        out.csv += std::to_string(k) + "," + (s.opened_box ? std::to_string(*s.opened_box) : std::string("start")) +
                   "," + (s.opened_box ? (s.found ? "found" : "empty") : "-") + "," + num12(s.entropy_bits) + "," +
                   state_components(probs) + "\n";
    }
    out.payload = {{"n_boxes", n},
                   {"ball_index", ball},
                   {"opening_order", order},
                   {"steps", steps},
                   {"verdict", verdict_json(verdict)}};
    return out;
}

CommandOutput cmd_qubit(const RunConfig& cfg) {
    const auto input = QubitState::aligned(parse_axis(cfg.input));
    std::vector<BlochAxis> axes;
    for (const auto& item : split(cfg.axes, ',')) axes.push_back(parse_axis(item));
    if (axes.empty()) throw InputError("--axes must name at least one axis");

    const auto agg = qubit_experiment(input, axes, cfg.trials, cfg.seed);
    const auto verdict = determinism_check(agg, cfg.epsilon);

    std::vector<std::string> labels;
    for (const auto& a : axes) labels.push_back(axis_label(a));
    json freqs = json::array();
    for (const auto& f : agg.empirical_frequencies) freqs.push_back({{"plus", f[0]}, {"minus", f[1]}});

    CommandOutput out;
    out.payload = {{"input", cfg.input},
                   {"axes", labels},
                   {"trials", agg.trials},
                   {"seed", agg.seed},
                   {"per_step_entropy_bits", agg.per_step_entropy_bits},
                   {"empirical_frequencies", freqs},
                   {"distinct_maximal_states", agg.distinct_maximal_states},
                   {"same_axis_pairs", agg.same_axis_pairs},
                   {"repeat_probability",
                    agg.same_axis_pairs ? json(static_cast<double>(agg.same_axis_repeats) /
                                               static_cast<double>(agg.same_axis_pairs))
                                        : json(nullptr)},
                   {"verdict", verdict_json(verdict)}};

    // CSV carries the first trial's trace.
    auto rng = CounterRng(cfg.seed).split(0);
    const auto trace = run_sequence(input, axes, rng);
    out.csv = kTraceHeader;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& s = trace.steps[k];
        const auto& b = s.post.bloch();
        const double bloch[3] = {b.x, b.y, b.z};
        out.csv += std::to_string(k + 1) + "," + labels[k] + "," + (s.outcome > 0 ? "+1" : "-1") + "," +
                   num12(agg.per_step_entropy_bits[k]) + "," + state_components(bloch) + "\n";
    }
    return out;
}

json config_json(const RunConfig& cfg, const std::string& format) {
    json args = json::object();
    if (cfg.command == "poset") {
        args = {{"file", cfg.poset_file}, {"cap", cfg.cap}, {"dot", cfg.dot_path}};
    } else if (cfg.command == "context") {
        args = {{"a", cfg.basis_a}, {"b", cfg.basis_b}};
    } else if (cfg.command == "sweep") {
        args = {{"start", cfg.sweep_start}, {"stop", cfg.sweep_stop}, {"step", cfg.sweep_step}};
    } else if (cfg.command == "boxes") {
        args = {{"n", cfg.n_boxes}, {"ball", cfg.ball}, {"order", cfg.order}};
    } else if (cfg.command == "qubit") {
        args = {{"input", cfg.input}, {"axes", cfg.axes}};
    }
    return {{"command", cfg.command},
            {"seed", cfg.seed},
            {"trials", cfg.trials},
            {"tolerance", cfg.tolerance},
            {"epsilon", cfg.epsilon},
            {"format", format},
            {"out", cfg.out_path.empty() ? json(nullptr) : json(cfg.out_path)},
            {"args", args}};
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Order-theoretic contextuality toolkit", "ctxq"};
    app.require_subcommand(1, 1);
    app.option_defaults()->always_capture_default();

    const auto add_common = [&cfg](CLI::App* sub) {
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--trials", cfg.trials, "Samples or trials")->check(CLI::PositiveNumber);
        sub->add_option("--tolerance", cfg.tolerance, "Classification tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--epsilon", cfg.epsilon, "Approximate-determinism threshold (bits)")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--out", cfg.out_path, "Also write the result to this file");
        sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* axioms = app.add_subcommand("axioms", "Entropy axiom checks for Shannon, Hartley and a mixture");
    add_common(axioms);

    auto* poset = app.add_subcommand("poset", "Analyze a poset file");
    add_common(poset);
    poset->add_option("file", cfg.poset_file, "Poset JSON file")->required();
    poset->add_option("--dot", cfg.dot_path, "Write the Hasse diagram as DOT to this path");
    poset->add_option("--cap", cfg.cap, "Enumeration cap")->check(CLI::Range(std::size_t{1}, kMaxEnumerationCap));

    auto* context = app.add_subcommand("context", "Contextual distance between two bases");
    add_common(context);
    context->add_option("--a", cfg.basis_a, "Axis (z, x, y, -z, theta:phi) or basis JSON file");
    context->add_option("--b", cfg.basis_b, "Axis (z, x, y, -z, theta:phi) or basis JSON file");
    context->require_subcommand(0, 1);

    const auto add_sweep_options = [&](CLI::App* sub) {
        add_common(sub);
        sub->add_option("--start", cfg.sweep_start, "First angle (radians)");
        sub->add_option("--stop", cfg.sweep_stop, "Last angle (radians)");
        sub->add_option("--step", cfg.sweep_step, "Angle increment (radians)");
    };
    auto* context_sweep = context->add_subcommand("sweep", "Qubit distance curve over an angle grid");
    add_sweep_options(context_sweep);
    auto* sweep = app.add_subcommand("sweep", "Qubit distance curve over an angle grid");
    add_sweep_options(sweep);

    auto* boxes = app.add_subcommand("boxes", "Classical ball-in-boxes search");
    add_common(boxes);
    boxes->add_option("--n", cfg.n_boxes, "Number of boxes")->check(CLI::Range(std::size_t{2}, std::size_t{64}));
    boxes->add_option("--ball", cfg.ball, "Box holding the ball (default: last)");
    boxes->add_option("--order", cfg.order, "Comma-separated opening order (default: 0,1,...)");

    auto* qubit = app.add_subcommand("qubit", "Sequential spin measurements");
    add_common(qubit);
    qubit->add_option("--input", cfg.input, "Input state, aligned with this axis");
    qubit->add_option("--axes", cfg.axes, "Comma-separated measurement axes");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return kExitConfig;
    }

    if (axioms->parsed()) cfg.command = "axioms";
    if (poset->parsed()) cfg.command = "poset";
    if (context->parsed()) cfg.command = context_sweep->parsed() ? "sweep" : "context";
    if (sweep->parsed()) cfg.command = "sweep";
    if (boxes->parsed()) cfg.command = "boxes";
    if (qubit->parsed()) cfg.command = "qubit";
    const std::string format = cfg.format.empty() ? (cfg.command == "sweep" ? "csv" : "json") : cfg.format;

    const auto started = std::chrono::steady_clock::now();
    int status = kExitOk;
    CommandOutput result;
    try {
        if (cfg.command == "axioms") result = cmd_axioms(cfg, status);
        else if (cfg.command == "poset") result = cmd_poset(cfg);
        else if (cfg.command == "context") result = cmd_context(cfg);
        else if (cfg.command == "sweep") result = cmd_sweep(cfg);
        else if (cfg.command == "boxes") result = cmd_boxes(cfg);
        else result = cmd_qubit(cfg);
    } catch (const SizeLimitError& e) {
        err << "ctxq: " << e.what() << "\n";
        return kExitResourceCap;
    } catch (const Error& e) {
        err << "ctxq: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "ctxq: " << e.what() << "\n";
        return kExitInput;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;

    std::string text;
    if (format == "csv") {
        if (result.csv.empty()) {
            err << "ctxq: command '" << cfg.command << "' has no CSV form\n";
            return kExitConfig;
        }
        text = result.csv;
    } else {
        const json doc = {{"tool", "ctxq"},
                          {"version", CTXQ_VERSION},
                          {"config", config_json(cfg, format)},
                          {"payload", result.payload},
                          {"duration_seconds", elapsed.count()}};
        text = doc.dump(2) + "\n";
    }
    out << text;
    if (!cfg.out_path.empty()) {
        try {
            write_atomically(cfg.out_path, text);
        } catch (const std::exception& e) {
            err << "ctxq: " << e.what() << "\n";
            return kExitInput;
        }
    }
    return status;
}

std::string payload_fingerprint(const std::string& document) {
    auto doc = nlohmann::json::parse(document);
    doc.erase("duration_seconds");
    return doc.dump();
}

} // namespace ctxq::cli
