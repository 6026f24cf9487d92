// ============================================================================
// acir/matcher.hpp — match decision and semantic score
// ============================================================================
//
// A source matches a query q when some forcing set F and some qualified
// extension s of its action sequence admit a model deciding q (condition c1)
// whose decision does not come from the assumptions alone (condition c2).
// The semantic score is the least |F| + Δ(s) over such witnesses, or infinity.
//
// The search runs budget-first (iterative deepening over |F| + Δ(s)), so the
// first accepted candidate is minimal by construction.  Qualifiers are only
// drawn from each step's potential u-effects: a qualifier mentioning any
// other fluent can never equal a branching set, hence admits no model.
//
// ============================================================================

#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "acir/initial_state.hpp"
#include "acir/transition.hpp"

namespace acir {

struct MatchDiagnostics {
    std::uint64_t candidates_tried{0};
    std::uint64_t models_enumerated{0};
    double        wall_ms{0.0};
    bool          budget_capped{false};   // search stopped at the cap, score > cap
    std::uint32_t highest_budget{0};      // last budget fully explored
    bool          expansion_missing{false};  // ε(I, ℵ) does not exist
};

struct MatchResult {
    bool                    matched{false};
    Score                   score{Score::infinity()};
    FluentSet               witness_forced;    // F
    QualifiedActionSequence witness_sequence;  // s
    std::optional<Path>     witness_path;      // π, when matched
    MatchDiagnostics        diagnostics;
};

struct MatchOptions {
    static constexpr std::uint32_t kUnbounded = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t    max_budget{kUnbounded};
    TransitionTrace* trace{nullptr};
};

/// Condition c1: the models of [γ(ε, F), s] that entail ±q.
std::vector<Path> check_c1(const Source& src, FluentId query, const FluentSet& f,
                           const QualifiedActionSequence& s, const PartialState& eps,
                           const Domain& dom, TransitionCache* cache = nullptr,
                           TransitionTrace* trace = nullptr);

/// Condition c2: re-derive the initial state with the assumptions stripped
/// (γ of the initial literals not granted by ε, no forcing) and require every
/// resulting view to leave q undecided or decided opposite to π's outcome.
bool check_c2(const Source& src, FluentId query, const Path& pi, const PartialState& eps,
              const Domain& dom);

// Streams every (F, s) pair with |F| + Δ(s) equal to a fixed budget, in the
// tie-breaking order: |F| ascending, F lexicographic, then qualifier
// assignments by step index and fluent.  Budget 0 yields exactly (∅, ℵ?).
class CandidateIterator {
public:
    CandidateIterator(const Source& src, const Domain& dom, std::uint32_t budget);

    /// Advances to the next candidate; false when the budget is exhausted.
    bool next(FluentSet& f, QualifiedActionSequence& s);

    /// Largest budget with any candidate: |𝓕| plus the total u-capacity of ℵ.
    static std::uint32_t max_budget(const Source& src, const Domain& dom);

private:
    bool advance_qualifiers();
    bool seed_qualifiers(std::uint32_t total);
    bool advance_forced();

    const Source*          src_;
    const Domain*          dom_;
    std::uint32_t          budget_;
    std::size_t            forced_size_;
    std::vector<FluentId>  forced_;     // current combination, ascending
    std::vector<FluentSet> capacity_;   // per-step potential u-effects
    std::vector<std::uint64_t> qual_masks_;  // per-step subset masks over capacity_
    bool                   done_{false};
    bool                   fresh_{true};
};

/// FindMatch: decides the match and computes the minimal score by
/// budget-ordered search.  Throws QueryNotInSignatureError and propagates
/// EmergentNondeterminismError.
MatchResult find_match(const Source& src, const Query& q, const MatchOptions& opts = {});

/// The semantic score alone.
Score score(const Source& src, const Query& q, const MatchOptions& opts = {});

}  // namespace acir
