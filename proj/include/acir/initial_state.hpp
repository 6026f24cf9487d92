// ============================================================================
// acir/initial_state.hpp — from partial initial knowledge to initial states
// ============================================================================
//
// Forcing overrides the default assumption for selected fluents, completion
// applies the default assumption (defaults false, the rest unknown) and the
// constraint closure, and the conservative expansion keeps exactly the
// initial-state literals shared by every case split that is compatible with
// the source's action sequence.
//
// ============================================================================

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "acir/transition.hpp"

namespace acir {

/// I[f]: the forcing of f in I.
///   { I ∪ {f} }            if f is a default fluent and neither -f nor u(f) is in I
///   { I ∪ {f}, I ∪ {-f} }  if f is not a default and f is untouched in I
///   { I }                  otherwise
std::vector<PartialState> force(const PartialState& i, FluentId f, const Domain& dom);

/// I[F], folding force over F in ascending fluent order; the outcome set is
/// order-independent.  Empty F yields { I }.
std::vector<PartialState> force_all(const PartialState& i, const FluentSet& f, const Domain& dom);

/// γ(I): add -f for every default fluent f with f ∉ I, close under the
/// constraints, then mark every untouched fluent unknown.  std::nullopt when
/// the closure is inconsistent.  I must contain plain literals only.
std::optional<StateSet> complete(const PartialState& i, const Domain& dom);

// γ(I, F) together with its degree |F|.
struct Completion {
    std::vector<StateSet> states;  // sorted, unique
    std::size_t           degree{0};
};

/// γ(I, F) = { γ(I') | I' ∈ I[F], γ(I') exists }; degree = |F|.
Completion completion_set(const PartialState& i, const FluentSet& f, const Domain& dom);

/// ε(I, ℵ): intersection of the forced variants I' ∈ I[𝓕∖𝒟] whose completion
/// exists and is compatible with the action sequence (some path follows ℵ
/// from γ(I')).  std::nullopt when no variant qualifies — the story is
/// fundamentally inconsistent and the source matches nothing.
std::optional<PartialState> conservative_expansion(const PartialState& i,
                                                   std::span<const Action> seq,
                                                   const Domain& dom,
                                                   TransitionCache* cache = nullptr);

/// Convenience: a Source's initial literal set as a PartialState.
PartialState initial_of(const Source& src);

}  // namespace acir
