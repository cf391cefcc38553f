#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>

#include <CLI11.hpp>

#include "cologic/algebra.hpp"
#include "cologic/covers.hpp"
#include "cologic/ef_game.hpp"
#include "cologic/formula.hpp"
#include "cologic/fraisse.hpp"
#include "cologic/json_io.hpp"
#include "cologic/satisfaction.hpp"
#include "cologic/verify.hpp"
#include "report.hpp"

namespace cologic::cli {
namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

struct Context {
    std::vector<std::string> arguments;
    Format format = Format::json;
};

ContactAlgebra load_model(RunReport& report, const std::string& path)
{
    const std::string bytes = report.add_input_file(path);
    return contact_from_graph(graph_from_json(parse_json(bytes, path), path));
}

GoodTuple tuple_argument(RunReport& report, const ContactAlgebra& b, const std::string& name,
                         const std::string& text)
{
    if (text.empty()) {
        return unit_tuple(b);
    }
    report.add_input(name, text);
    GoodTuple t = tuple_from_json(parse_json(text, name), name);
    if (!is_good_tuple(b, t)) {
        try {
            require_good_tuple(b, t);
        } catch (const std::invalid_argument& e) {
            throw InputError(name + ": " + e.what());
        }
    }
    return t;
}

Formula formula_argument(RunReport& report, const std::string& text)
{
    report.add_input("formula", text);
    return parse(text);
}

int finish(const RunReport& report, const Context& ctx, bool verdict)
{
    report.write(std::cout, ctx.format);
    return verdict ? kExitTrue : kExitFalse;
}

Json step_json(const EfStep& s)
{
    Json j{{"depth", s.depth},
           {"side", s.side},
           {"arrangement", to_json(s.arrangement)},
           {"challenge", to_json(s.challenge)}};
    j["response"] = s.response ? to_json(*s.response) : Json(nullptr);
    return j;
}

Json formula_json(const Formula& phi)
{
    return Json{{"text", print(phi)}, {"context", phi.context()}, {"rank", phi.rank()}, {"size", phi.size()}};
}

// ---------------------------------------------------------------------------

struct McOptions {
    std::string model;
    std::string tuple;
    std::string formula;
};

int run_mc(const McOptions& o, const Context& ctx)
{
    RunReport report("mc", ctx.arguments);
    const ContactAlgebra b = load_model(report, o.model);
    const GoodTuple t = tuple_argument(report, b, "tuple", o.tuple);
    const Formula phi = formula_argument(report, o.formula);
    const bool holds = satisfies(b, t, phi);
    report.set_verdict(holds);
    report.results() = {{"model", to_json(b.atom_contact())},
                        {"tuple", to_json(t)},
                        {"nerve", to_json(nerve(b, t))},
                        {"formula", formula_json(phi)},
                        {"satisfied", holds}};
    return finish(report, ctx, holds);
}

struct SatOptions {
    std::string formula;
    int max_vertices = 4;
};

int run_sat_search(const SatOptions& o, const Context& ctx)
{
    RunReport report("sat-search", ctx.arguments);
    const Formula phi = formula_argument(report, o.formula);
    const auto model = find_model(phi, o.max_vertices);
    report.set_verdict(model.has_value());
    report.results() = {{"formula", formula_json(phi)}, {"max_vertices", o.max_vertices}};
    report.results()["model"] = model ? to_json(*model) : Json(nullptr);
    return finish(report, ctx, model.has_value());
}

struct EfOptionsCli {
    std::string model_a;
    std::string model_b;
    std::string tuple_a;
    std::string tuple_b;
    int depth = 1;
    bool no_isomorphisms = false;
    int rounds = -1;
};

int run_ef(const EfOptionsCli& o, const Context& ctx)
{
    RunReport report("ef", ctx.arguments);
    const ContactAlgebra a = load_model(report, o.model_a);
    const ContactAlgebra b = load_model(report, o.model_b);
    const GoodTuple ta = tuple_argument(report, a, "tuple-a", o.tuple_a);
    const GoodTuple tb = tuple_argument(report, b, "tuple-b", o.tuple_b);
    if (ta.size() != tb.size()) {
        throw InputError("tuples have different lengths " + std::to_string(ta.size()) + " and " +
                         std::to_string(tb.size()));
    }
    EfOptions options;
    options.use_isomorphisms = !o.no_isomorphisms;
    const EfResult r = ef_equivalent(a, ta, b, tb, o.depth, options);
    report.set_verdict(r.equivalent);
    report.results() = {{"tuple_a", to_json(ta)},
                        {"tuple_b", to_json(tb)},
                        {"depth", o.depth},
                        {"equivalent", r.equivalent},
                        {"reason", r.reason}};
    for (const EfStep& s : r.trace) {
        report.add_trace(step_json(s));
    }
    if (o.rounds >= 0) {
        const auto bf = back_and_forth(a, ta, b, tb, o.rounds);
        Json j = nullptr;
        if (bf) {
            Json positions = Json::array();
            for (const auto& [x, y] : bf->positions) {
                positions.push_back({to_json(x), to_json(y)});
            }
            j = {{"positions", std::move(positions)}};
            j["atom_map"] = bf->atom_map ? Json(*bf->atom_map) : Json(nullptr);
        }
        report.results()["back_and_forth"] = std::move(j);
    }
    return finish(report, ctx, r.equivalent);
}

struct TvOptions {
    std::string model;
    std::string blocks;
    int bound = 4;
};

int run_tv_check(const TvOptions& o, const Context& ctx)
{
    RunReport report("tv-check", ctx.arguments);
    const ContactAlgebra b = load_model(report, o.model);
    report.add_input("blocks", o.blocks);
    const GoodTuple blocks = tuple_from_json(parse_json(o.blocks, "blocks"), "blocks");
    const SubstructureReport r = generated_substructure_check(b, blocks, o.bound);
    report.set_verdict(r.ok());
    Json violations = Json::array();
    for (const auto& v : r.violations) {
        violations.push_back(
            {{"tuple", to_json(v.tuple)}, {"arrangement", to_json(v.arrangement)}, {"refinement", to_json(v.refinement)}});
    }
    report.results() = {{"blocks", to_json(blocks)},
                        {"bound", r.bound},
                        {"obligations_checked", r.obligations_checked},
                        {"violation_count", r.violation_count},
                        {"violations", std::move(violations)},
                        {"generated_substructure", r.ok()}};
    return finish(report, ctx, r.ok());
}

struct EpiOptions {
    std::string source;
    std::string target;
    std::string map;
};

int run_epi_check(const EpiOptions& o, const Context& ctx)
{
    RunReport report("epi-check", ctx.arguments);
    const FiniteGraph g = graph_from_json(parse_json(report.add_input_file(o.source), o.source), o.source);
    const FiniteGraph h = graph_from_json(parse_json(report.add_input_file(o.target), o.target), o.target);
    report.add_input("map", o.map);
    const Json m = parse_json(o.map, "map");
    if (!m.is_array()) {
        throw InputError("map: expected an array of integers");
    }
    std::vector<int> images;
    for (const Json& v : m) {
        if (!v.is_number_integer()) {
            throw InputError("map: expected an array of integers");
        }
        images.push_back(v.get<int>());
    }
    bool epi = false;
    try {
        epi = is_is_epi(images, g, h);
    } catch (const std::invalid_argument& e) {
        throw InputError(std::string("map: ") + e.what());
    }
    report.set_verdict(epi);
    report.results() = {{"map", images}, {"is_epi", epi}};
    if (g.is_linear() && h.is_linear()) {
        report.results()["is_pattern"] = is_pattern_epi(images, g.vertex_count(), h.vertex_count());
    }
    return finish(report, ctx, epi);
}

struct PatternOptions {
    int m = 1;
    int n = 1;
};

int run_patterns(const PatternOptions& o, const Context& ctx)
{
    RunReport report("patterns", ctx.arguments);
    if (o.m < 1 || o.n < 1) {
        throw InputError("pattern sizes must be positive");
    }
    Json list = Json::array();
    if (o.n <= o.m) {
        for (const Arrangement& p : enumerate_patterns(o.m, o.n)) {
            list.push_back(to_json(p));
        }
    }
    const bool any = !list.empty();
    report.set_verdict(any);
    report.results() = {{"m", o.m}, {"n", o.n}, {"count", list.size()}, {"patterns", std::move(list)}};
    return finish(report, ctx, any);
}

struct AmalgamateOptions {
    std::string f;
    std::string g;
    int bound = 30;
};

int run_amalgamate(const AmalgamateOptions& o, const Context& ctx)
{
    RunReport report("amalgamate", ctx.arguments);
    report.add_input("f", o.f);
    report.add_input("g", o.g);
    const Arrangement f = arrangement_from_json(parse_json(o.f, "f"), "f");
    const Arrangement g = arrangement_from_json(parse_json(o.g, "g"), "g");
    if (f.target() != g.target() || !f.is_pattern() || !g.is_pattern()) {
        throw InputError("f and g must be patterns onto the same linear graph");
    }
    const auto r = amalgamate(f, g, o.bound);
    report.set_verdict(r.has_value());
    report.results() = {{"f", to_json(f)}, {"g", to_json(g)}, {"bound", o.bound}};
    if (r) {
        report.results()["amalgam"] = {{"size", r->size}, {"u", to_json(r->first)}, {"v", to_json(r->second)}};
    } else {
        report.results()["amalgam"] = nullptr;
    }
    return finish(report, ctx, r.has_value());
}

struct BuildOptions {
    int stages = 1;
    int bound = 3;
    int amalgamation_bound = kDefaultAmalgamationBound;
    std::string out;
};

int run_fraisse_build(const BuildOptions& o, const Context& ctx)
{
    RunReport report("fraisse build", ctx.arguments);
    FraisseSequence seq;
    try {
        seq = build_fraisse_sequence(o.stages, o.bound, o.amalgamation_bound);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    } catch (const FraisseError& e) {
        report.set_verdict(false);
        report.results() = {{"error", e.what()}};
        return finish(report, ctx, false);
    }
    const Json j = to_json(seq);
    if (!o.out.empty()) {
        std::ofstream file(o.out, std::ios::binary);
        if (!file) {
            throw InputError(o.out + ": cannot write file");
        }
        file << j.dump(2) << '\n';
    }
    std::size_t discharged = 0;
    for (const Obligation& ob : seq.ledger) {
        discharged += ob.discharged_at ? 1 : 0;
    }
    report.set_verdict(true);
    report.results() = {{"stages", seq.stages},
                        {"obligations", seq.ledger.size()},
                        {"discharged", discharged},
                        {"queued", seq.ledger.size() - discharged},
                        {"sequence", j}};
    if (!o.out.empty()) {
        report.results()["written_to"] = o.out;
    }
    return finish(report, ctx, true);
}

struct AuditOptions {
    std::string file;
    int stage = 0;
    int bound = 3;
};

int run_fraisse_audit(const AuditOptions& o, const Context& ctx)
{
    RunReport report("fraisse audit", ctx.arguments);
    const FraisseSequence seq = sequence_from_json(parse_json(report.add_input_file(o.file), o.file), o.file);
    if (o.stage < 0 || o.stage >= seq.stage_count()) {
        throw InputError("stage " + std::to_string(o.stage) + " is not in a sequence of " +
                         std::to_string(seq.stage_count()) + " stages");
    }
    const AuditReport r = extension_property_audit(seq, o.stage, o.bound);
    Json entries = Json::array();
    for (const AuditEntry& e : r.entries) {
        Json j{{"map", to_json(e.map)}};
        if (e.discharged_at) {
            j["status"] = "discharged";
            j["discharged_at"] = *e.discharged_at;
            j["witness"] = to_json(*e.witness);
        } else {
            j["status"] = "undischarged";
        }
        entries.push_back(std::move(j));
    }
    const bool all = r.undischarged() == 0;
    report.set_verdict(all);
    report.results() = {{"stage", r.stage},
                        {"bound", r.bound},
                        {"checked", r.entries.size()},
                        {"undischarged", r.undischarged()},
                        {"entries", std::move(entries)}};
    return finish(report, ctx, all);
}

struct GnOptions {
    int n = 0;
    int epi_to = -1;
};

int run_gn(const GnOptions& o, const Context& ctx)
{
    RunReport report("gn", ctx.arguments);
    FiniteGraph g;
    try {
        g = example_gn(o.n);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    report.results() = {{"n", o.n}, {"graph", to_json(g)}, {"star", 1 << o.n}, {"all_ones", (1 << o.n) - 1}};
    bool verdict = true;
    if (o.epi_to >= 0) {
        std::vector<int> f;
        try {
            f = example_gn_epi(o.epi_to, o.n);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        verdict = is_is_epi(f, g, example_gn(o.epi_to));
        report.results()["epi"] = {{"to", o.epi_to}, {"map", f}, {"is_epi", verdict}};
    }
    report.set_verdict(verdict);
    return finish(report, ctx, verdict);
}

struct VerifyOptions {
    std::string suite;
    bool list = false;
};

int run_verify(const VerifyOptions& o, const Context& ctx)
{
    if (o.list) {
        RunReport report("verify", ctx.arguments);
        Json suites = Json::array();
        for (const SuiteInfo& s : suite_catalog()) {
            suites.push_back({{"name", s.name}, {"summary", s.summary}});
        }
        report.results() = {{"suites", std::move(suites)}};
        if (ctx.format == Format::text) {
            for (const SuiteInfo& s : suite_catalog()) {
                std::cout << s.name << '\n';
            }
            return kExitTrue;
        }
        report.write(std::cout, ctx.format);
        return kExitTrue;
    }
    if (o.suite.empty()) {
        throw InputError("verify needs a suite name or --list");
    }
    RunReport report("verify", ctx.arguments);
    const SuiteReport r = run_suite(o.suite);
    report.set_verdict(r.ok());
    report.results() = {{"suite", r.name},
                        {"scope", r.scope},
                        {"cases_checked", r.cases_checked},
                        {"violations", r.violation_count}};
    report.results()["counterexample"] = r.counterexample ? Json(*r.counterexample) : Json(nullptr);
    return finish(report, ctx, r.ok());
}

} // namespace

int run(int argc, char** argv)
{
    CLI::App app{"Model checking and Fraisse constructions for cologic over finite contact algebras", "cologic"};
    app.require_subcommand(1);
    Context ctx;
    for (int i = 1; i < argc; ++i) {
        ctx.arguments.emplace_back(argv[i]);
    }
    std::string format = "json";
    bool timing = false;
    app.add_option("--format", format, "Report rendering")->check(CLI::IsMember({"json", "text"}));
    app.add_flag("--timing", timing, "Print elapsed wall-clock time to stderr");

    std::function<int()> action;

    McOptions mc;
    auto* mc_cmd = app.add_subcommand("mc", "Check a formula at a tuple of a model");
    mc_cmd->add_option("--model", mc.model, "Graph JSON file")->required();
    mc_cmd->add_option("--tuple", mc.tuple, "Good tuple as JSON, e.g. [[0],[1,2]] (default: the unit tuple)");
    mc_cmd->add_option("--formula", mc.formula, "Formula text")->required();
    mc_cmd->callback([&] { action = [&] { return run_mc(mc, ctx); }; });

    SatOptions sat;
    auto* sat_cmd = app.add_subcommand("sat-search", "Search for the least model of a sentence");
    sat_cmd->add_option("--formula", sat.formula, "Sentence text")->required();
    sat_cmd->add_option("--max-vertices", sat.max_vertices, "Largest graph tried")
        ->check(CLI::Range(1, kMaxModelSearchVertices));
    sat_cmd->callback([&] { action = [&] { return run_sat_search(sat, ctx); }; });

    EfOptionsCli ef;
    auto* ef_cmd = app.add_subcommand("ef", "Depth-bounded equivalence game between two tuples");
    ef_cmd->add_option("--model-a", ef.model_a, "Graph JSON file")->required();
    ef_cmd->add_option("--model-b", ef.model_b, "Graph JSON file")->required();
    ef_cmd->add_option("--tuple-a", ef.tuple_a, "Tuple in model A (default: unit tuple)");
    ef_cmd->add_option("--tuple-b", ef.tuple_b, "Tuple in model B (default: unit tuple)");
    ef_cmd->add_option("--depth", ef.depth, "Game depth")->check(CLI::Range(0, 8));
    ef_cmd->add_option("--rounds", ef.rounds, "Also play this many back-and-forth rounds")->check(CLI::Range(0, 64));
    ef_cmd->add_flag("--no-isomorphisms", ef.no_isomorphisms, "Do not shortcut through contact isomorphisms");
    ef_cmd->callback([&] { action = [&] { return run_ef(ef, ctx); }; });

    TvOptions tv;
    auto* tv_cmd = app.add_subcommand("tv-check", "Generated-substructure check for a partition of the atoms");
    tv_cmd->add_option("--model", tv.model, "Graph JSON file")->required();
    tv_cmd->add_option("--blocks", tv.blocks, "Blocks as JSON atom lists")->required();
    tv_cmd->add_option("--bound", tv.bound, "Longest refinement considered")->check(CLI::Range(1, 64));
    tv_cmd->callback([&] { action = [&] { return run_tv_check(tv, ctx); }; });

    EpiOptions epi;
    auto* epi_cmd = app.add_subcommand("epi-check", "Test a vertex map for the IS-epi conditions");
    epi_cmd->add_option("--source", epi.source, "Graph JSON file")->required();
    epi_cmd->add_option("--target", epi.target, "Graph JSON file")->required();
    epi_cmd->add_option("--map", epi.map, "Images as a JSON array")->required();
    epi_cmd->callback([&] { action = [&] { return run_epi_check(epi, ctx); }; });

    PatternOptions pat;
    auto* pat_cmd = app.add_subcommand("patterns", "List the patterns m ->> n");
    pat_cmd->add_option("m", pat.m, "Source size")->required()->check(CLI::Range(1, 16));
    pat_cmd->add_option("n", pat.n, "Target size")->required()->check(CLI::Range(1, 16));
    pat_cmd->callback([&] { action = [&] { return run_patterns(pat, ctx); }; });

    AmalgamateOptions am;
    auto* am_cmd = app.add_subcommand("amalgamate", "Amalgamate two patterns onto a common linear graph");
    am_cmd->add_option("--f", am.f, "First pattern as a JSON array")->required();
    am_cmd->add_option("--g", am.g, "Second pattern as a JSON array")->required();
    am_cmd->add_option("--bound", am.bound, "Largest amalgam size")->check(CLI::Range(1, 4096));
    am_cmd->callback([&] { action = [&] { return run_amalgamate(am, ctx); }; });

    auto* fr_cmd = app.add_subcommand("fraisse", "Build or audit a finite Fraisse sequence");
    fr_cmd->require_subcommand(1);
    BuildOptions build;
    auto* build_cmd = fr_cmd->add_subcommand("build", "Build a sequence of linear graphs");
    build_cmd->add_option("--stages", build.stages, "Number of stages")->check(CLI::Range(1, 64));
    build_cmd->add_option("--bound", build.bound, "Largest obligation source size")->check(CLI::Range(1, 16));
    build_cmd->add_option("--amalgamation-bound", build.amalgamation_bound, "Largest amalgam size")
        ->check(CLI::Range(1, 1 << 16));
    build_cmd->add_option("--out", build.out, "Write the sequence file here");
    build_cmd->callback([&] { action = [&] { return run_fraisse_build(build, ctx); }; });
    AuditOptions audit;
    auto* audit_cmd = fr_cmd->add_subcommand("audit", "Audit the extension property of a sequence file");
    audit_cmd->add_option("file", audit.file, "Sequence JSON file")->required();
    audit_cmd->add_option("--stage", audit.stage, "Stage index")->check(CLI::Range(0, 1 << 16));
    audit_cmd->add_option("--bound", audit.bound, "Largest obligation source size")->check(CLI::Range(1, 16));
    audit_cmd->callback([&] { action = [&] { return run_fraisse_audit(audit, ctx); }; });

    GnOptions gn;
    auto* gn_cmd = app.add_subcommand("gn", "The example graph G_n");
    gn_cmd->add_option("n", gn.n, "Level")->required()->check(CLI::Range(0, kMaxGnLevel));
    gn_cmd->add_option("--epi-to", gn.epi_to, "Also check the truncation onto G_m")->check(CLI::Range(0, kMaxGnLevel));
    gn_cmd->callback([&] { action = [&] { return run_gn(gn, ctx); }; });

    VerifyOptions verify;
    auto* verify_cmd = app.add_subcommand("verify", "Run an exhaustive property suite");
    verify_cmd->add_option("suite", verify.suite, "Suite name");
    verify_cmd->add_flag("--list", verify.list, "List the suites");
    verify_cmd->callback([&] { action = [&] { return run_verify(verify, ctx); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    ctx.format = format == "text" ? Format::text : Format::json;

    const auto start = std::chrono::steady_clock::now();
    int code = kExitUsage;
    try {
        code = action();
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        code = kExitUsage;
    }
    if (timing) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        std::cerr << "elapsed: " << elapsed.count() << " s\n";
    }
    return code;
}

} // namespace cologic::cli

int main(int argc, char** argv)
{
    return cologic::cli::run(argc, argv);
}
