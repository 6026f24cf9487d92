#include "acir/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "acir/parser.hpp"

namespace acir {

namespace fs = std::filesystem;
using nlohmann::json;

CorpusLoad load_corpus(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw Error("not a readable directory: " + dir.string());

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        if (entry.is_regular_file() && entry.path().extension() == ".acir")
            files.push_back(entry.path());
    }
    if (ec) throw Error("cannot list directory: " + dir.string());
    std::sort(files.begin(), files.end());

    CorpusLoad load;
    for (const fs::path& p : files) {
        std::ifstream in(p);
        std::stringstream buf;
        buf << in.rdbuf();
        if (!in.good() && !in.eof()) {
            load.failures.push_back({p.string(), "read error"});
            continue;
        }
        try {
            load.sources.push_back(parse_document(buf.str(), p.string()).source);
        } catch (const ParseError& e) {
            load.failures.push_back({p.string(), e.what()});
        }
    }
    std::sort(load.sources.begin(), load.sources.end(),
              [](const Source& a, const Source& b) { return a.id < b.id; });
    return load;
}

unsigned effective_jobs(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ACIR_JOBS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace {

WitnessSummary summarize_witness(const Source& src, const MatchResult& r) {
    WitnessSummary w;
    for (FluentId f : r.witness_forced) w.forced.push_back(src.signature.fluent_name(f));
    for (const QualifiedStep& step : r.witness_sequence) {
        WitnessSummary::Step out;
        for (ActionId e : step.action) out.action.push_back(src.signature.action_name(e));
        for (FluentId f : step.qualifier) out.qualifier.push_back(src.signature.fluent_name(f));
        w.steps.push_back(std::move(out));
    }
    return w;
}

RankEntry evaluate_one(const Source& src, const Query& q, const RankConfig& cfg) {
    RankEntry entry;
    entry.id = src.id;
    MatchOptions opts;
    opts.max_budget = cfg.max_budget;
    try {
        MatchResult r = find_match(src, q, opts);
        entry.score = r.score;
        entry.matched = r.matched;
        entry.elapsed_ms = r.diagnostics.wall_ms;
        if (r.matched) entry.witness = summarize_witness(src, r);
        if (r.diagnostics.budget_capped)
            entry.error = "budget cap reached; score > " + std::to_string(cfg.max_budget);
    } catch (const Error& e) {
        entry.score = Score::infinity();
        entry.matched = false;
        entry.error = e.what();
    }
    return entry;
}

}  // namespace

RankedList rank(const Query& q, const std::vector<Source>& corpus, const RankConfig& cfg) {
    RankedList list;
    list.query = q.fluent;
    list.config = cfg;
    list.entries.resize(corpus.size());

    const unsigned jobs = std::min<unsigned>(effective_jobs(cfg.jobs),
                                             std::max<std::size_t>(corpus.size(), 1));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= corpus.size()) break;
            list.entries[i] = evaluate_one(corpus[i], q, cfg);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(jobs);
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    std::sort(list.entries.begin(), list.entries.end(), [](const RankEntry& a, const RankEntry& b) {
        if (a.score < b.score) return true;
        if (b.score < a.score) return false;
        return a.id < b.id;
    });
    return list;
}

// ── Report formats ──────────────────────────────────────────────────────────

namespace {

json score_to_json(const Score& s) {
    if (s.infinite) return json("inf");
    return json(s.value);
}

Score score_from_json(const json& j) {
    if (j.is_string()) return Score::infinity();
    return Score::finite(j.get<std::uint32_t>());
}

}  // namespace

std::string ranked_list_to_json(const RankedList& list) {
    json out;
    out["query"] = list.query;
    out["config"]["max_budget"] = list.config.max_budget == MatchOptions::kUnbounded
                                      ? json(nullptr)
                                      : json(list.config.max_budget);
    out["config"]["jobs"] = list.config.jobs;
    out["results"] = json::array();
    for (const RankEntry& e : list.entries) {
        json r;
        r["id"] = e.id;
        r["score"] = score_to_json(e.score);
        r["matched"] = e.matched;
        if (e.witness) {
            json w;
            w["F"] = e.witness->forced;
            w["s"] = json::array();
            for (const WitnessSummary::Step& step : e.witness->steps)
                w["s"].push_back({{"action", step.action}, {"qualifier", step.qualifier}});
            r["witness"] = w;
        } else {
            r["witness"] = nullptr;
        }
        r["elapsed_ms"] = e.elapsed_ms;
        r["error"] = e.error ? json(*e.error) : json(nullptr);
        out["results"].push_back(std::move(r));
    }
    return out.dump(2) + "\n";
}

RankedList ranked_list_from_json(const std::string& text) {
    const json in = json::parse(text);
    RankedList list;
    list.query = in.at("query").get<std::string>();
    const json& cfg = in.at("config");
    list.config.max_budget = cfg.at("max_budget").is_null()
                                 ? MatchOptions::kUnbounded
                                 : cfg.at("max_budget").get<std::uint32_t>();
    list.config.jobs = cfg.at("jobs").get<unsigned>();
    for (const json& r : in.at("results")) {
        RankEntry e;
        e.id = r.at("id").get<std::string>();
        e.score = score_from_json(r.at("score"));
        e.matched = r.at("matched").get<bool>();
        if (!r.at("witness").is_null()) {
            WitnessSummary w;
            w.forced = r.at("witness").at("F").get<std::vector<std::string>>();
            for (const json& step : r.at("witness").at("s")) {
                WitnessSummary::Step s;
                s.action = step.at("action").get<std::vector<std::string>>();
                s.qualifier = step.at("qualifier").get<std::vector<std::string>>();
                w.steps.push_back(std::move(s));
            }
            e.witness = std::move(w);
        }
        e.elapsed_ms = r.at("elapsed_ms").get<double>();
        if (!r.at("error").is_null()) e.error = r.at("error").get<std::string>();
        list.entries.push_back(std::move(e));
    }
    return list;
}

std::string ranked_list_to_table(const RankedList& list) {
    std::size_t id_width = 2;
    for (const RankEntry& e : list.entries) id_width = std::max(id_width, e.id.size());

    std::ostringstream out;
    out << "query: " << list.query << "\n";
    out << "rank  ";
    out << std::left;
    out.width(static_cast<std::streamsize>(id_width + 2));
    out << "id";
    out << "score  matched  time_ms\n";
    std::size_t pos = 1;
    // The infinity glyph is multi-byte; pad by display length, not bytes.
    auto pad = [](const std::string& text, std::size_t display_len, std::size_t width) {
        return text + std::string(width > display_len ? width - display_len : 1, ' ');
    };
    for (const RankEntry& e : list.entries) {
        const std::string rank_text = std::to_string(pos++);
        std::string row = pad(rank_text, rank_text.size(), 6);
        row += pad(e.id, e.id.size(), id_width + 2);
        const std::string score = e.score.to_string();
        row += pad(score, e.score.infinite ? 1 : score.size(), 7);
        row += pad(e.matched ? "yes" : "no", e.matched ? 3 : 2, 9);
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.2f", e.elapsed_ms);
        row += ms;
        if (e.error) row += "  ! " + *e.error;
        out << row << "\n";
    }
    return out.str();
}

std::string to_dot(const Signature& sig, const TransitionTrace& trace) {
    std::vector<StateSet> nodes;
    for (const TransitionTrace::Edge& e : trace.edges) {
        nodes.push_back(e.from);
        nodes.push_back(e.to);
    }
    std::sort(nodes.begin(), nodes.end());
    nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
    auto node_id = [&](const StateSet& s) {
        const auto it = std::lower_bound(nodes.begin(), nodes.end(), s);
        return "s" + std::to_string(it - nodes.begin());
    };

    std::string out = "digraph acir {\n  rankdir=LR;\n  node [shape=box];\n";
    for (const StateSet& s : nodes)
        out += "  " + node_id(s) + " [label=\"" + state_to_string(sig, s) + "\"];\n";
    for (const TransitionTrace::Edge& e : trace.edges) {
        std::string beta = "{";
        for (std::size_t i = 0; i < e.branching.size(); ++i)
            beta += (i ? ", " : "") + sig.fluent_name(e.branching[i]);
        beta += "}";
        out += "  " + node_id(e.from) + " -> " + node_id(e.to) + " [label=\"" +
               action_to_string(sig, e.action) + " / " + beta + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace acir
