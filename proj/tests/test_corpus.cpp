#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "acir/benchmark.hpp"
#include "acir/corpus.hpp"
#include "acir/parser.hpp"
#include "helpers.hpp"

using namespace acir;
using namespace acir::test;

namespace fs = std::filesystem;

namespace {

std::vector<std::string> ids_of(const RankedList& list) {
    std::vector<std::string> out;
    for (const RankEntry& e : list.entries) out.push_back(e.id);
    return out;
}

RankedList normalized(RankedList list) {
    for (RankEntry& e : list.entries) e.elapsed_ms = 0.0;
    return list;
}

bool same_ranking(const RankedList& a, const RankedList& b) {
    if (a.entries.size() != b.entries.size()) return false;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const RankEntry& x = a.entries[i];
        const RankEntry& y = b.entries[i];
        if (x.id != y.id || !(x.score == y.score) || x.matched != y.matched ||
            x.witness != y.witness || x.error != y.error)
            return false;
    }
    return true;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("load_corpus picks up every fixture") {
    const CorpusLoad load = load_corpus(ACIR_FIXTURE_DIR);
    CHECK(load.failures.empty());
    REQUIRE(load.sources.size() == 5);
    CHECK(load.sources.front().id == "ex1_s1");
}

TEST_CASE("load_corpus reports bad files and keeps good ones") {
    TempDir dir("acir_mixed_corpus");
    std::ofstream(dir.path / "good.acir")
        << "fluents: f. actions: a. initial: f. sequence: a.\n";
    std::ofstream(dir.path / "bad.acir") << "fluents f actions\n";
    const CorpusLoad load = load_corpus(dir.path);
    CHECK(load.sources.size() == 1);
    CHECK(load.failures.size() == 1);

    TempDir empty("acir_empty_corpus");
    const CorpusLoad nothing = load_corpus(empty.path);
    CHECK(nothing.sources.empty());
    CHECK(nothing.failures.empty());

    CHECK_THROWS_AS(load_corpus(dir.path / "missing"), Error);
}

TEST_CASE("ranking over the fixtures matches the worked scores") {
    const CorpusLoad load = load_corpus(ACIR_FIXTURE_DIR);
    const RankedList list = rank(Query{"m"}, load.sources, {});
    CHECK(ids_of(list) ==
          std::vector<std::string>{"ex1_s1", "ex3", "ex4", "ex1_s2", "ex2"});
    CHECK(list.entries[0].score == Score::finite(0));
    CHECK(list.entries[1].score == Score::finite(0));
    CHECK(list.entries[2].score == Score::finite(1));
    CHECK(list.entries[3].score == Score::infinity());
    CHECK(list.entries[4].score == Score::infinity());
}

TEST_CASE("ranking is independent of the worker count") {
    const CorpusLoad load = load_corpus(ACIR_FIXTURE_DIR);
    RankConfig one, four, eight;
    one.jobs = 1;
    four.jobs = 4;
    eight.jobs = 8;
    const RankedList a = rank(Query{"m"}, load.sources, one);
    const RankedList b = rank(Query{"m"}, load.sources, four);
    const RankedList c = rank(Query{"m"}, load.sources, eight);
    CHECK(same_ranking(a, b));
    CHECK(same_ranking(a, c));
}

TEST_CASE("a source with emergent non-determinism ranks last with a note") {
    std::vector<Source> corpus = load_corpus(ACIR_FIXTURE_DIR).sources;
    corpus.push_back(parse_source(
        "fluents: m, p, q, r. actions: a."
        " law: q if -r, p. law: r if -q, p. law: a causes p."
        " initial: . sequence: a.",
        "aa_loopy"));
    const RankedList list = rank(Query{"m"}, corpus, {});
    const auto it = std::find_if(list.entries.begin(), list.entries.end(),
                                 [](const RankEntry& e) { return e.id == "aa_loopy"; });
    REQUIRE(it != list.entries.end());
    // Infinity sorts after every finite score; ties break by id.
    CHECK(it - list.entries.begin() == 3);
    CHECK(it->score == Score::infinity());
    CHECK_FALSE(it->matched);
    REQUIRE(it->error.has_value());
    CHECK(it->error->find("emergent") != std::string::npos);
}

TEST_CASE("the json report round-trips exactly") {
    const CorpusLoad load = load_corpus(ACIR_FIXTURE_DIR);
    RankConfig cfg;
    cfg.jobs = 2;
    const RankedList list = rank(Query{"m"}, load.sources, cfg);
    const RankedList parsed = ranked_list_from_json(ranked_list_to_json(list));
    CHECK(parsed.query == list.query);
    CHECK(parsed.config.jobs == list.config.jobs);
    CHECK(parsed.config.max_budget == list.config.max_budget);
    REQUIRE(parsed.entries.size() == list.entries.size());
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
        CHECK(parsed.entries[i].id == list.entries[i].id);
        CHECK(parsed.entries[i].score == list.entries[i].score);
        CHECK(parsed.entries[i].matched == list.entries[i].matched);
        CHECK(parsed.entries[i].witness == list.entries[i].witness);
        CHECK(parsed.entries[i].elapsed_ms == doctest::Approx(list.entries[i].elapsed_ms));
        CHECK(parsed.entries[i].error == list.entries[i].error);
    }
    CHECK(same_ranking(normalized(list), normalized(parsed)));
}

TEST_CASE("a budget cap annotates the capped entries") {
    const CorpusLoad load = load_corpus(ACIR_FIXTURE_DIR);
    RankConfig cfg;
    cfg.max_budget = 0;
    const RankedList list = rank(Query{"m"}, load.sources, cfg);
    const auto it = std::find_if(list.entries.begin(), list.entries.end(),
                                 [](const RankEntry& e) { return e.id == "ex4"; });
    REQUIRE(it != list.entries.end());
    CHECK(it->score == Score::infinity());
    REQUIRE(it->error.has_value());
    CHECK(it->error->find("budget cap") != std::string::npos);
    // ex1_s1 still matches at budget 0 and carries no annotation.
    CHECK(list.entries.front().id == "ex1_s1");
    CHECK_FALSE(list.entries.front().error.has_value());
}

TEST_CASE("the table report renders every entry") {
    const CorpusLoad load = load_corpus(ACIR_FIXTURE_DIR);
    const std::string table = ranked_list_to_table(rank(Query{"m"}, load.sources, {}));
    for (const char* id : {"ex1_s1", "ex1_s2", "ex2", "ex3", "ex4"})
        CHECK(table.find(id) != std::string::npos);
}

TEST_CASE("dot export names states and labels edges") {
    const Source src = load_fixture("ex4");
    TransitionTrace trace;
    MatchOptions opts;
    opts.trace = &trace;
    find_match(src, Query{"m"}, opts);
    const std::string dot = to_dot(src.signature, trace);
    CHECK(dot.find("digraph") != std::string::npos);
    CHECK(dot.find("u(m)") != std::string::npos);
    CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("benchmark generation is reproducible byte for byte") {
    BenchmarkConfig cfg;
    cfg.instances = 4;
    cfg.seed = 42;
    const GeneratedBenchmark a = generate_benchmark(cfg);
    const GeneratedBenchmark b = generate_benchmark(cfg);
    REQUIRE(a.instances.size() == b.instances.size());
    for (std::size_t i = 0; i < a.instances.size(); ++i) {
        CHECK(serialize_source(a.instances[i].source) == serialize_source(b.instances[i].source));
        CHECK(a.instances[i].query == b.instances[i].query);
    }
    CHECK(bench_manifest_json(a) == bench_manifest_json(b));
}

TEST_CASE("benchmark sources respect the configured shape") {
    BenchmarkConfig cfg;
    cfg.instances = 4;
    cfg.seed = 7;
    cfg.steps = 5;
    cfg.max_concurrent = 3;
    cfg.u_actions = 2;
    const GeneratedBenchmark bench = generate_benchmark(cfg);
    for (const BenchmarkInstance& inst : bench.instances) {
        CHECK(inst.source.sequence.size() == 5);
        std::size_t occurrences = 0;
        for (const Action& a : inst.source.sequence) {
            CHECK(a.size() <= 3);
            occurrences += a.size();
        }
        CHECK(occurrences <= 15);

        std::size_t u_laws = 0;
        for (const Law& law : inst.source.description.laws)
            if (law.kind == Law::Kind::Dynamic && law.consequence.value == Tri::Unknown)
                ++u_laws;
        CHECK(u_laws == 2);
        CHECK(validate_source(inst.source).empty());
    }
}

TEST_CASE("bench scores are stable across reruns") {
    BenchmarkConfig cfg;
    cfg.instances = 4;
    cfg.seed = 11;
    const BenchReport a = run_bench(generate_benchmark(cfg));
    const BenchReport b = run_bench(generate_benchmark(cfg));
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].matched == b.rows[i].matched);
        CHECK(a.rows[i].score == b.rows[i].score);
    }
    const std::string csv = bench_csv(a);
    CHECK(csv.rfind("instance,query,matched,score,elapsed_ms\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);  // header + 4 rows

    const std::string summary = bench_summary(a);
    CHECK(summary.find("mean(match)") != std::string::npos);
    CHECK(summary.find("mean(no-match)") != std::string::npos);
}
