// ============================================================================
// acir/benchmark.hpp — seeded synthetic instance generation and timing
// ============================================================================
//
// Generates reproducible random sources (deterministic effect laws, optional
// non-deterministic ones, sequences biased toward executability) plus one
// query per instance, calibrated so that roughly half of the instances match.
// run_bench scores every instance and reports per-instance times with the
// match / no-match split.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acir/core.hpp"

namespace acir {

struct BenchmarkConfig {
    std::size_t   fluents{6};
    std::size_t   steps{5};           // 3..10
    std::size_t   max_concurrent{3};  // elementary actions per step
    std::size_t   u_actions{0};       // laws redefined with a u(·) consequence
    std::size_t   instances{20};
    std::uint64_t seed{0};
};

struct BenchmarkInstance {
    Source source;
    Query  query;
};

struct GeneratedBenchmark {
    BenchmarkConfig                config;
    std::vector<BenchmarkInstance> instances;
    double                         match_ratio{0.0};  // achieved at calibration time
};

/// Deterministic in the seed: equal configs generate byte-identical sources.
GeneratedBenchmark generate_benchmark(const BenchmarkConfig& cfg);

struct BenchRow {
    std::string id;
    std::string query;
    bool        matched{false};
    Score       score;
    double      elapsed_ms{0.0};
};

struct BenchReport {
    std::vector<BenchRow> rows;
    double mean_match_ms{0.0};
    double mean_nomatch_ms{0.0};
    double stddev_match_ms{0.0};
    double stddev_nomatch_ms{0.0};
    std::size_t matched_count{0};

    /// Expected direction: matched instances resolve faster on average.
    bool direction_holds() const noexcept {
        return matched_count == 0 || matched_count == rows.size() ||
               mean_match_ms <= mean_nomatch_ms;
    }
};

BenchReport run_bench(const GeneratedBenchmark& bench);

/// instance,query,matched,score,elapsed_ms — one row per instance.
std::string bench_csv(const BenchReport& report);

std::string bench_summary(const BenchReport& report);

/// Config echo, per-instance queries and the achieved match ratio.
std::string bench_manifest_json(const GeneratedBenchmark& bench);

}  // namespace acir
