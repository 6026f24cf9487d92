// ============================================================================
// acir — command-line front end
// ============================================================================
//
// Subcommands:
//   rank      score every source in a directory against a query and sort
//   match     score a single source, optionally explaining the witness
//   emit-asp  write the logic program for a source (expansion/c1/c2 stage)
//   bench     generate a seeded benchmark, time it, write a CSV report
//   validate  parse and validate source files
//
// Exit codes: 0 ok, 1 usage, 2 parse/validation error, 3 semantic error.
//
// ============================================================================

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "acir/benchmark.hpp"
#include "acir/corpus.hpp"
#include "acir/initial_state.hpp"
#include "acir/matcher.hpp"
#include "acir/asp_emitter.hpp"
#include "acir/parser.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitSemantic = 3;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw acir::Error("cannot read file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw acir::Error("cannot write file: " + path);
    out << content;
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

acir::Source load_source(const std::string& path) {
    return acir::parse_source(slurp(path), stem_of(path));
}

acir::Query load_query(const std::string& path) { return acir::parse_query(slurp(path)); }

void print_path(const acir::Signature& sig, const acir::Path& path) {
    std::cout << "  " << acir::state_to_string(sig, path.states[0]) << "\n";
    for (std::size_t i = 0; i < path.actions.size(); ++i) {
        std::cout << "    --" << acir::action_to_string(sig, path.actions[i]) << "-->\n";
        std::cout << "  " << acir::state_to_string(sig, path.states[i + 1]) << "\n";
    }
}

struct RankArgs {
    std::string query_path;
    std::string sources_dir;
    std::uint32_t max_budget{acir::MatchOptions::kUnbounded};
    unsigned jobs{0};
    std::string format{"table"};
};

int cmd_rank(const RankArgs& args) {
    const acir::Query query = load_query(args.query_path);
    const acir::CorpusLoad load = acir::load_corpus(args.sources_dir);
    for (const auto& failure : load.failures)
        std::cerr << "warning: skipped " << failure.path << ": " << failure.message << "\n";
    if (load.sources.empty()) {
        if (!load.failures.empty()) {
            std::cerr << "error: no source in " << args.sources_dir << " parsed\n";
            return kExitParse;
        }
        std::cerr << "warning: no .acir files in " << args.sources_dir << "\n";
    }

    acir::RankConfig cfg;
    cfg.max_budget = args.max_budget;
    cfg.jobs = args.jobs;
    const acir::RankedList list = acir::rank(query, load.sources, cfg);
    if (args.format == "json") std::cout << acir::ranked_list_to_json(list);
    else std::cout << acir::ranked_list_to_table(list);
    return kExitOk;
}

struct MatchArgs {
    std::string query_path;
    std::string source_path;
    std::uint32_t max_budget{acir::MatchOptions::kUnbounded};
    bool explain{false};
    std::string dot_path;
};

int cmd_match(const MatchArgs& args) {
    const acir::Query query = load_query(args.query_path);
    const acir::Source src = load_source(args.source_path);

    acir::TransitionTrace trace;
    acir::MatchOptions opts;
    opts.max_budget = args.max_budget;
    if (!args.dot_path.empty()) opts.trace = &trace;

    const acir::MatchResult result = acir::find_match(src, query, opts);

    std::cout << "source:  " << src.id << "\n";
    std::cout << "query:   " << query.fluent << "\n";
    std::cout << "matched: " << (result.matched ? "yes" : "no") << "\n";
    std::cout << "score:   " << result.score.to_string();
    if (result.diagnostics.budget_capped)
        std::cout << " (budget cap reached; score > " << args.max_budget << ")";
    std::cout << "\n";
    if (result.diagnostics.expansion_missing)
        std::cout << "note:    the initial knowledge is incompatible with the story\n";

    if (result.matched && args.explain) {
        std::cout << "forced:  {";
        for (std::size_t i = 0; i < result.witness_forced.size(); ++i)
            std::cout << (i ? ", " : "") << src.signature.fluent_name(result.witness_forced[i]);
        std::cout << "}\n";
        std::cout << "steps:   ";
        for (std::size_t i = 0; i < result.witness_sequence.size(); ++i) {
            const auto& step = result.witness_sequence[i];
            if (i) std::cout << "; ";
            std::cout << acir::action_to_string(src.signature, step.action) << "/{";
            for (std::size_t k = 0; k < step.qualifier.size(); ++k)
                std::cout << (k ? ", " : "") << src.signature.fluent_name(step.qualifier[k]);
            std::cout << "}";
        }
        std::cout << "\nwitness path:\n";
        print_path(src.signature, *result.witness_path);
    }
    if (args.explain) {
        std::cout << "tried:   " << result.diagnostics.candidates_tried << " candidates, "
                  << result.diagnostics.models_enumerated << " deciding models, "
                  << result.diagnostics.wall_ms << " ms\n";
    }
    if (!args.dot_path.empty()) write_file(args.dot_path, acir::to_dot(src.signature, trace));
    return kExitOk;
}

struct EmitArgs {
    std::string source_path;
    std::string stage{"c1"};
    std::string out_path;
};

int cmd_emit(const EmitArgs& args) {
    const acir::Source src = load_source(args.source_path);
    acir::EmittedProgram prog;
    if (args.stage == "expansion") {
        prog = acir::emit_for_findmatch_stage(src, acir::FindMatchStage::Expansion);
    } else if (args.stage == "c1") {
        prog = acir::emit_for_findmatch_stage(src, acir::FindMatchStage::C1);
    } else {
        // c2 needs the assumption residue of a concrete witness.
        const acir::Domain dom(src);
        auto eps = acir::conservative_expansion(acir::initial_of(src), src.sequence, dom);
        if (!eps) throw acir::Error("conservative expansion does not exist; no c2 stage");
        acir::MatchResult r = acir::find_match(src, acir::Query{src.signature.fluent_name(0)});
        // Fall back over every fluent until some query yields a witness.
        for (acir::FluentId f = 1; !r.matched && f < src.signature.fluent_count(); ++f)
            r = acir::find_match(src, acir::Query{src.signature.fluent_name(f)});
        if (!r.matched) throw acir::Error("no query yields a witness; nothing to strip for c2");
        acir::StageArgs stage_args;
        const acir::StateSet& sigma0 = r.witness_path->initial();
        for (acir::FluentId f = 0; f < src.signature.fluent_count(); ++f) {
            const acir::Tri v = sigma0.at(f);
            if (v == acir::Tri::Unknown || eps->get(f) == v) continue;
            stage_args.stripped.push_back(acir::FluentLiteral{f, v == acir::Tri::True});
        }
        prog = acir::emit_for_findmatch_stage(src, acir::FindMatchStage::C2, stage_args);
    }
    if (args.out_path.empty()) std::cout << prog.text();
    else write_file(args.out_path, prog.text());
    return kExitOk;
}

struct BenchArgs {
    std::uint64_t seed{0};
    std::size_t steps{5};
    std::size_t instances{20};
    std::size_t fluents{6};
    std::size_t max_concurrent{3};
    std::size_t u_actions{0};
    std::string out_path{"report.csv"};
    std::string dump_dir;
};

int cmd_bench(const BenchArgs& args) {
    acir::BenchmarkConfig cfg;
    cfg.seed = args.seed;
    cfg.steps = args.steps;
    cfg.instances = args.instances;
    cfg.fluents = args.fluents;
    cfg.max_concurrent = args.max_concurrent;
    cfg.u_actions = args.u_actions;

    std::cerr << "generating " << cfg.instances << " instances (seed " << cfg.seed << ")...\n";
    const acir::GeneratedBenchmark bench = acir::generate_benchmark(cfg);
    if (!args.dump_dir.empty()) {
        std::filesystem::create_directories(args.dump_dir);
        for (const acir::BenchmarkInstance& inst : bench.instances) {
            write_file(args.dump_dir + "/" + inst.source.id + ".acir",
                       acir::serialize_source(inst.source));
            write_file(args.dump_dir + "/" + inst.source.id + ".acq",
                       acir::serialize_query(inst.query));
        }
        write_file(args.dump_dir + "/manifest.json", acir::bench_manifest_json(bench));
    }

    std::cerr << "running...\n";
    const acir::BenchReport report = acir::run_bench(bench);
    write_file(args.out_path, acir::bench_csv(report));
    std::cout << acir::bench_summary(report);
    std::cout << "calibrated match ratio: " << bench.match_ratio << "\n";
    std::cout << "report written to " << args.out_path << "\n";
    return kExitOk;
}

int cmd_validate(const std::vector<std::string>& paths) {
    bool any_bad = false;
    for (const std::string& path : paths) {
        try {
            const acir::Source src = acir::parse_source(slurp(path), stem_of(path));
            std::vector<acir::Violation> report = acir::validate_source(src);
            try {
                const acir::EmergenceReport emergence =
                    acir::check_emergent_nondeterminism(acir::Domain(src));
                const std::size_t shown = std::min<std::size_t>(emergence.witnesses.size(), 5);
                for (std::size_t i = 0; i < shown; ++i) {
                    const acir::EmergenceWitness& w = emergence.witnesses[i];
                    report.push_back(acir::Violation{
                        "emergent non-determinism at " +
                        acir::state_to_string(src.signature, w.state) + " under " +
                        acir::action_to_string(src.signature, w.action)});
                }
                if (emergence.witnesses.size() > shown)
                    report.push_back(acir::Violation{
                        "emergent non-determinism at " +
                        std::to_string(emergence.witnesses.size() - shown) + " further states"});
            } catch (const acir::CapExceededError& e) {
                std::cerr << path << ": note: " << e.what() << "\n";
            }
            if (report.empty()) {
                std::cout << path << ": ok\n";
            } else {
                any_bad = true;
                for (const acir::Violation& v : report)
                    std::cout << path << ": violation: " << v.message << "\n";
            }
        } catch (const acir::ParseError& e) {
            any_bad = true;
            std::cout << path << ": error: " << e.what() << "\n";
        } catch (const acir::Error& e) {
            any_bad = true;
            std::cout << path << ": error: " << e.what() << "\n";
        }
    }
    return any_bad ? kExitParse : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"action-language source ranking"};
    app.require_subcommand(1);

    RankArgs rank_args;
    CLI::App* rank = app.add_subcommand("rank", "rank a source directory against a query");
    rank->add_option("--query", rank_args.query_path, "query file (.acq)")->required();
    rank->add_option("--sources", rank_args.sources_dir, "directory of .acir files")->required();
    rank->add_option("--max-budget", rank_args.max_budget, "search budget cap");
    rank->add_option("--jobs", rank_args.jobs, "parallel evaluations (default: ACIR_JOBS or cores)");
    rank->add_option("--format", rank_args.format, "table|json")
        ->check(CLI::IsMember({"table", "json"}));

    MatchArgs match_args;
    CLI::App* match = app.add_subcommand("match", "score a single source");
    match->add_option("--query", match_args.query_path, "query file (.acq)")->required();
    match->add_option("--source", match_args.source_path, "source file (.acir)")->required();
    match->add_option("--max-budget", match_args.max_budget, "search budget cap");
    match->add_flag("--explain", match_args.explain, "print witness and diagnostics");
    match->add_option("--emit-dot", match_args.dot_path, "write explored transitions as DOT");

    EmitArgs emit_args;
    CLI::App* emit = app.add_subcommand("emit-asp", "emit the logic program for a source");
    emit->add_option("--source", emit_args.source_path, "source file (.acir)")->required();
    emit->add_option("--stage", emit_args.stage, "expansion|c1|c2")
        ->check(CLI::IsMember({"expansion", "c1", "c2"}));
    emit->add_option("-o,--output", emit_args.out_path, "output file (.lp); stdout if omitted");

    BenchArgs bench_args;
    CLI::App* bench = app.add_subcommand("bench", "generate and time a seeded benchmark");
    bench->add_option("--seed", bench_args.seed, "generator seed")->required();
    bench->add_option("--steps", bench_args.steps, "sequence length (3-10)")
        ->check(CLI::Range(std::size_t{3}, std::size_t{10}));
    bench->add_option("--instances", bench_args.instances, "instance count")->required();
    bench->add_option("--fluents", bench_args.fluents, "fluent count");
    bench->add_option("--max-concurrent", bench_args.max_concurrent, "actions per step");
    bench->add_option("--u-actions", bench_args.u_actions, "non-deterministic laws per source");
    bench->add_option("-o,--output", bench_args.out_path, "CSV report path");
    bench->add_option("--dump-dir", bench_args.dump_dir, "also write .acir/.acq files here");

    std::vector<std::string> validate_paths;
    CLI::App* validate = app.add_subcommand("validate", "parse and validate sources");
    validate->add_option("sources", validate_paths, "source files")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (rank->parsed()) return cmd_rank(rank_args);
        if (match->parsed()) return cmd_match(match_args);
        if (emit->parsed()) return cmd_emit(emit_args);
        if (bench->parsed()) return cmd_bench(bench_args);
        if (validate->parsed()) return cmd_validate(validate_paths);
    } catch (const acir::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const acir::EmergentNondeterminismError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    } catch (const acir::QueryNotInSignatureError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const acir::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    return kExitUsage;
}
