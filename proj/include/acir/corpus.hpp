// ============================================================================
// acir/corpus.hpp — corpus loading and query-against-corpus ranking
// ============================================================================

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "acir/matcher.hpp"

namespace acir {

struct CorpusLoad {
    struct Failure {
        std::string path;
        std::string message;
    };
    std::vector<Source>  sources;   // sorted by id
    std::vector<Failure> failures;  // malformed files, skipped
};

/// Parses every `.acir` file in the directory (non-recursive).  Malformed
/// files are collected in `failures` rather than aborting the load.
/// Throws Error when the directory cannot be read.
CorpusLoad load_corpus(const std::filesystem::path& dir);

// Name-level witness echo, self-contained for report serialization.
struct WitnessSummary {
    struct Step {
        std::vector<std::string> action;
        std::vector<std::string> qualifier;
        bool operator==(const Step&) const = default;
    };
    std::vector<std::string> forced;
    std::vector<Step>        steps;
    bool operator==(const WitnessSummary&) const = default;
};

struct RankEntry {
    std::string                   id;
    Score                         score;
    bool                          matched{false};
    std::optional<WitnessSummary> witness;
    double                        elapsed_ms{0.0};
    std::optional<std::string>    error;
};

struct RankConfig {
    std::uint32_t max_budget{MatchOptions::kUnbounded};
    unsigned      jobs{0};  // 0 = available parallelism (honors ACIR_JOBS)
};

struct RankedList {
    std::string            query;
    RankConfig             config;
    std::vector<RankEntry> entries;  // ascending score, ties by id
};

/// Scores every source independently (up to `jobs` in parallel) and sorts by
/// ascending score with infinity last, ties broken by id.  Per-source errors
/// (emergent non-determinism, query not in signature) become score-∞ entries
/// with an annotation; the ranking itself never fails.
RankedList rank(const Query& q, const std::vector<Source>& corpus, const RankConfig& cfg = {});

/// Resolves the effective worker count: explicit value, else ACIR_JOBS, else
/// hardware concurrency.
unsigned effective_jobs(unsigned requested);

std::string ranked_list_to_json(const RankedList& list);
RankedList  ranked_list_from_json(const std::string& text);

std::string ranked_list_to_table(const RankedList& list);

/// DOT rendering of a traversed transition fragment.
std::string to_dot(const Signature& sig, const TransitionTrace& trace);

}  // namespace acir
