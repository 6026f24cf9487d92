#include "acir/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "acir/initial_state.hpp"
#include "acir/matcher.hpp"
#include "acir/transition.hpp"

namespace acir {

namespace {

// SplitMix64; std::uniform_int_distribution is implementation-defined, and
// generated fixtures must be byte-identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n) by rejection.
    std::size_t below(std::size_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return static_cast<std::size_t>(v % n);
    }

    bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

FluentLiteral random_literal(Rng& rng, std::size_t nf) {
    return FluentLiteral{static_cast<FluentId>(rng.below(nf)), rng.chance(1, 2)};
}

std::vector<FluentLiteral> random_conditions(Rng& rng, std::size_t nf, std::size_t max_count) {
    std::vector<FluentLiteral> conds;
    const std::size_t count = rng.below(max_count + 1);
    FluentSet used;
    for (std::size_t i = 0; i < count; ++i) {
        FluentLiteral l = random_literal(rng, nf);
        if (contains(used, l.fluent)) continue;
        used.push_back(l.fluent);
        canonicalize(used);
        conds.push_back(l);
    }
    canonicalize_conditions(conds);
    return conds;
}

Source generate_source(Rng& rng, const BenchmarkConfig& cfg, const std::string& id) {
    const std::size_t nf = cfg.fluents;
    const std::size_t na = std::max<std::size_t>(cfg.max_concurrent * 2, 4);

    std::vector<std::string> fluent_names, action_names;
    for (std::size_t i = 0; i < nf; ++i) fluent_names.push_back("f" + std::to_string(i + 1));
    for (std::size_t i = 0; i < na; ++i) action_names.push_back("a" + std::to_string(i + 1));

    Source src;
    src.id = id;
    src.signature = Signature(fluent_names, action_names);

    for (FluentId f = 0; f < nf; ++f)
        if (rng.chance(1, 3)) src.defaults.push_back(f);
    canonicalize(src.defaults);

    // One or two effect laws per action, sparse constraints and preconditions.
    for (ActionId a = 0; a < na; ++a) {
        const std::size_t law_count = 1 + (rng.chance(1, 2) ? 1 : 0);
        for (std::size_t k = 0; k < law_count; ++k) {
            Law law;
            law.kind = Law::Kind::Dynamic;
            law.action = a;
            law.consequence = to_ext(random_literal(rng, nf));
            law.conditions = random_conditions(rng, nf, 2);
            src.description.laws.push_back(std::move(law));
        }
        if (rng.chance(1, 3)) {
            Law law;
            law.kind = Law::Kind::Executability;
            law.action = a;
            law.conditions = random_conditions(rng, nf, 2);
            if (law.conditions.empty())
                law.conditions.push_back(random_literal(rng, nf));
            src.description.laws.push_back(std::move(law));
        }
    }
    for (std::size_t k = 0; k < nf / 3; ++k) {
        Law law;
        law.kind = Law::Kind::StateConstraint;
        law.consequence = to_ext(random_literal(rng, nf));
        // Non-empty body that never mentions its own head fluent.
        for (;;) {
            law.conditions = random_conditions(rng, nf, 2);
            bool self = law.conditions.empty();
            for (const FluentLiteral& c : law.conditions)
                self = self || c.fluent == law.consequence.fluent;
            if (!self) break;
        }
        src.description.laws.push_back(std::move(law));
    }

    // Redefine cfg.u_actions distinct actions with a non-deterministic effect.
    FluentSet chosen;
    while (chosen.size() < std::min(cfg.u_actions, static_cast<std::size_t>(na))) {
        chosen.push_back(static_cast<FluentId>(rng.below(na)));
        canonicalize(chosen);
    }
    for (FluentId a : chosen) {
        for (Law& law : src.description.laws) {
            if (law.kind == Law::Kind::Dynamic && law.action == a) {
                law.consequence.value = Tri::Unknown;
                break;
            }
        }
    }
    src.description.canonicalize();

    if (rng.chance(1, 2)) {
        const std::size_t count = 1 + rng.below(2);
        std::map<FluentId, bool> lits;
        for (std::size_t i = 0; i < count; ++i) {
            FluentLiteral l = random_literal(rng, nf);
            lits.emplace(l.fluent, l.positive);
        }
        for (auto [f, positive] : lits) src.initial.push_back(FluentLiteral{f, positive});
    }

    // Sequence biased toward executability: sample a few candidate steps and
    // keep the first one some reachable state can follow.
    const Domain dom(src);
    TransitionCache cache;
    std::vector<StateSet> frontier = completion_set(initial_of(src), dom.non_defaults(), dom).states;
    for (std::size_t step = 0; step < cfg.steps; ++step) {
        Action accepted;
        std::vector<StateSet> next_frontier;
        for (int attempt = 0; attempt < 8; ++attempt) {
            Action candidate;
            const std::size_t width = 1 + rng.below(cfg.max_concurrent);
            while (candidate.size() < width) {
                candidate.push_back(static_cast<ActionId>(rng.below(na)));
                std::sort(candidate.begin(), candidate.end());
                candidate.erase(std::unique(candidate.begin(), candidate.end()), candidate.end());
            }
            accepted = candidate;
            next_frontier.clear();
            try {
                for (const StateSet& sigma : frontier) {
                    for (const Transition& t : cache.get(sigma, candidate, dom)) {
                        if (next_frontier.size() < 128) next_frontier.push_back(t.successor);
                    }
                }
            } catch (const EmergentNondeterminismError&) {
                next_frontier.clear();
            }
            if (!next_frontier.empty()) break;
        }
        std::sort(next_frontier.begin(), next_frontier.end());
        next_frontier.erase(std::unique(next_frontier.begin(), next_frontier.end()),
                            next_frontier.end());
        src.sequence.push_back(accepted);
        if (!next_frontier.empty()) frontier = std::move(next_frontier);
    }
    return src;
}

// Pre-scoring budget for query calibration; the timing run itself is
// unbounded.
constexpr std::uint32_t kCalibrationBudget = 2;

bool matches_at_cap(const Source& src, const Query& q) {
    MatchOptions opts;
    opts.max_budget = kCalibrationBudget;
    try {
        return find_match(src, q, opts).matched;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

GeneratedBenchmark generate_benchmark(const BenchmarkConfig& cfg) {
    GeneratedBenchmark out;
    out.config = cfg;
    Rng rng(cfg.seed);

    for (std::size_t i = 0; i < cfg.instances; ++i) {
        const std::string id = "bench_" + std::to_string(cfg.seed) + "_" + std::to_string(i);
        Source src = generate_source(rng, cfg, id);
        // Reject descriptions with emergent non-determinism outright.
        int guard = 0;
        while (!check_emergent_nondeterminism(Domain(src)).clean() && ++guard < 32)
            src = generate_source(rng, cfg, id);
        out.instances.push_back(BenchmarkInstance{std::move(src), Query{}});
    }

    // Choose per-instance queries, steering the corpus toward a 50% match
    // rate.  Candidates are probed in a seed-deterministic order.
    std::size_t matched = 0;
    for (std::size_t i = 0; i < out.instances.size(); ++i) {
        BenchmarkInstance& inst = out.instances[i];
        const std::size_t nf = inst.source.signature.fluent_count();
        std::vector<std::string> candidates = inst.source.signature.fluent_names();
        for (std::size_t k = candidates.size(); k > 1; --k)
            std::swap(candidates[k - 1], candidates[rng.below(k)]);

        std::optional<std::string> matching, nonmatching;
        for (const std::string& name : candidates) {
            if (matching && nonmatching) break;
            if (matches_at_cap(inst.source, Query{name})) {
                if (!matching) matching = name;
            } else if (!nonmatching) {
                nonmatching = name;
            }
        }
        const bool want_match = matched * 2 < i + 1;
        std::string pick;
        if (want_match && matching) pick = *matching;
        else if (!want_match && nonmatching) pick = *nonmatching;
        else if (matching) pick = *matching;
        else if (nonmatching) pick = *nonmatching;
        else pick = candidates.front();
        if (matching && pick == *matching) ++matched;
        inst.query = Query{pick};
        (void)nf;
    }
    out.match_ratio =
        out.instances.empty() ? 0.0 : static_cast<double>(matched) / out.instances.size();
    return out;
}

BenchReport run_bench(const GeneratedBenchmark& bench) {
    BenchReport report;
    for (const BenchmarkInstance& inst : bench.instances) {
        BenchRow row;
        row.id = inst.source.id;
        row.query = inst.query.fluent;
        try {
            MatchResult r = find_match(inst.source, inst.query);
            row.matched = r.matched;
            row.score = r.score;
            row.elapsed_ms = r.diagnostics.wall_ms;
        } catch (const Error&) {
            row.matched = false;
            row.score = Score::infinity();
        }
        report.rows.push_back(std::move(row));
    }

    double sum_m = 0, sum_n = 0, sq_m = 0, sq_n = 0;
    std::size_t count_m = 0, count_n = 0;
    for (const BenchRow& r : report.rows) {
        if (r.matched) {
            sum_m += r.elapsed_ms;
            sq_m += r.elapsed_ms * r.elapsed_ms;
            ++count_m;
        } else {
            sum_n += r.elapsed_ms;
            sq_n += r.elapsed_ms * r.elapsed_ms;
            ++count_n;
        }
    }
    report.matched_count = count_m;
    if (count_m > 0) {
        report.mean_match_ms = sum_m / count_m;
        report.stddev_match_ms = std::sqrt(std::max(0.0, sq_m / count_m - report.mean_match_ms *
                                                                              report.mean_match_ms));
    }
    if (count_n > 0) {
        report.mean_nomatch_ms = sum_n / count_n;
        report.stddev_nomatch_ms = std::sqrt(
            std::max(0.0, sq_n / count_n - report.mean_nomatch_ms * report.mean_nomatch_ms));
    }
    return report;
}

std::string bench_csv(const BenchReport& report) {
    std::string out = "instance,query,matched,score,elapsed_ms\n";
    for (const BenchRow& r : report.rows) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", r.elapsed_ms);
        out += r.id + "," + r.query + "," + (r.matched ? "1" : "0") + "," +
               (r.score.infinite ? "inf" : std::to_string(r.score.value)) + "," + ms + "\n";
    }
    return out;
}

std::string bench_summary(const BenchReport& report) {
    std::ostringstream out;
    out << "instances: " << report.rows.size() << " (" << report.matched_count << " matched, "
        << report.rows.size() - report.matched_count << " unmatched)\n";
    char buf[128];
    std::snprintf(buf, sizeof buf, "mean(match)    = %.2f ms (stddev %.2f)\n",
                  report.mean_match_ms, report.stddev_match_ms);
    out << buf;
    std::snprintf(buf, sizeof buf, "mean(no-match) = %.2f ms (stddev %.2f)\n",
                  report.mean_nomatch_ms, report.stddev_nomatch_ms);
    out << buf;
    if (!report.direction_holds())
        out << "warning: matched instances were not faster on average on this run\n";
    return out.str();
}

std::string bench_manifest_json(const GeneratedBenchmark& bench) {
    nlohmann::json out;
    out["config"] = {{"fluents", bench.config.fluents},
                     {"steps", bench.config.steps},
                     {"max_concurrent", bench.config.max_concurrent},
                     {"u_actions", bench.config.u_actions},
                     {"instances", bench.config.instances},
                     {"seed", bench.config.seed}};
    out["match_ratio"] = bench.match_ratio;
    out["instances"] = nlohmann::json::array();
    for (const BenchmarkInstance& inst : bench.instances)
        out["instances"].push_back({{"id", inst.source.id}, {"query", inst.query.fluent}});
    return out.dump(2) + "\n";
}

}  // namespace acir
