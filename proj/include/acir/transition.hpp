// ============================================================================
// acir/transition.hpp — three-valued transition semantics
// ============================================================================
//
// States assign every fluent one of {True, False, Unknown}.  A transition
// ⟨σ, a, σ'⟩ exists when a is executable in σ and σ' solves the expanded
// successor-state equation
//
//     σ' = Cn_Z(W ∪ (σ ∩ σ'))   for some W in the expansion of E(a, σ),
//
// where the expansion optionally replaces each non-deterministic effect u(f)
// by f or -f (reasoning by cases).  The branching set of the transition
// records where that replacement happened; qualified action sequences pin the
// branching set of every step.
//
// The equation is solved exactly, by enumerating inertia kernels: for each
// subset T of the fluents not bound by W, close W ∪ {σ's value on T} under
// the state constraints and keep the complete, consistent results that verify
// the equation.  Two distinct solutions for one W mean the description has
// emergent non-deterministic behavior, which is rejected with an error.
//
// ============================================================================

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "acir/core.hpp"

namespace acir {

// ── Partial and complete assignments ────────────────────────────────────────

// A consistent set of extended literals: at most one of {f, -f, u(f)} per
// fluent, possibly leaving fluents unassigned.
class PartialState {
public:
    PartialState() = default;
    explicit PartialState(std::size_t fluent_count)
        : slots_(fluent_count, kUnset) {}

    std::size_t fluent_count() const noexcept { return slots_.size(); }

    std::optional<Tri> get(FluentId f) const noexcept {
        std::uint8_t raw = slots_[f];
        if (raw == kUnset) return std::nullopt;
        return static_cast<Tri>(raw);
    }
    bool has(FluentId f) const noexcept { return slots_[f] != kUnset; }

    /// Returns false when f already holds a different value.
    bool assign(FluentId f, Tri v) noexcept {
        if (slots_[f] == kUnset) {
            slots_[f] = static_cast<std::uint8_t>(v);
            return true;
        }
        return slots_[f] == static_cast<std::uint8_t>(v);
    }

    bool complete() const noexcept;
    std::size_t assigned_count() const noexcept;

    std::vector<ExtLit> literals() const;                 // sorted by fluent
    std::vector<FluentLiteral> plain_literals() const;    // True/False entries only

    bool operator==(const PartialState&) const = default;

private:
    static constexpr std::uint8_t kUnset = 0xff;
    std::vector<std::uint8_t> slots_;
};

// A complete, consistent assignment (a state once closed under Z).
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::vector<Tri> values) : values_(std::move(values)) {}
    /// Precondition: ps.complete().
    explicit StateSet(const PartialState& ps);

    std::size_t fluent_count() const noexcept { return values_.size(); }
    Tri at(FluentId f) const noexcept { return values_[f]; }

    bool holds(FluentLiteral l) const noexcept {
        return values_[l.fluent] == (l.positive ? Tri::True : Tri::False);
    }
    bool unknown(FluentId f) const noexcept { return values_[f] == Tri::Unknown; }

    std::vector<ExtLit> literals() const;
    PartialState to_partial() const;

    auto operator<=>(const StateSet&) const = default;

private:
    std::vector<Tri> values_;
};

struct StateSetHash {
    std::size_t operator()(const StateSet& s) const noexcept;
};

std::string state_to_string(const Signature& sig, const StateSet& s);

// ── Qualified sequences and paths ───────────────────────────────────────────

using Qualifier = FluentSet;

struct QualifiedStep {
    Action    action;
    Qualifier qualifier;

    auto operator<=>(const QualifiedStep&) const = default;
};

using QualifiedActionSequence = std::vector<QualifiedStep>;

/// Extension of a plain action sequence where every qualifier is empty (ℵ?).
QualifiedActionSequence with_empty_qualifiers(std::span<const Action> seq);

/// Δ(s): the sum of the qualifier sizes.
std::size_t branching_degree(const QualifiedActionSequence& s);

struct Path {
    std::vector<StateSet> states;   // length n+1
    std::vector<Action>   actions;  // length n

    const StateSet& initial() const { return states.front(); }
    const StateSet& final() const { return states.back(); }

    auto operator<=>(const Path&) const = default;
};

/// π ⊨ l: the literal holds in the final state.
bool entails(const Path& pi, FluentLiteral l);
/// π ⊨ ±f: the final state assigns f True or False (not Unknown).
bool entails_pm(const Path& pi, FluentId f);

// ── Compiled domain ─────────────────────────────────────────────────────────

// Immutable, index-partitioned view of a source's signature, laws and default
// fluents; every semantic operation below runs against one of these.  Holds a
// reference to the signature, so the source must outlive the domain.
class Domain {
public:
    explicit Domain(const Source& src);
    Domain(const Signature& sig, const ActionDescription& ad, FluentSet defaults = {});

    const Signature& signature() const noexcept { return *sig_; }
    std::size_t fluent_count() const noexcept { return sig_->fluent_count(); }

    const FluentSet& defaults() const noexcept { return defaults_; }
    bool is_default(FluentId f) const noexcept { return contains(defaults_, f); }
    FluentSet non_defaults() const;  // 𝓕 ∖ 𝒟

    const std::vector<Law>& constraints() const noexcept { return constraints_; }
    const std::vector<Law>& dynamic_for(ActionId e) const { return dynamic_[e]; }
    const std::vector<Law>& executability_for(ActionId e) const { return executability_[e]; }

    /// Fluents that may acquire a u(·) effect from some element of a
    /// (static over-approximation: law conditions are ignored).
    FluentSet potential_u_effects(const Action& a) const;

private:
    const Signature*              sig_;
    FluentSet                     defaults_;
    std::vector<Law>              constraints_;
    std::vector<std::vector<Law>> dynamic_;        // by action id
    std::vector<std::vector<Law>> executability_;  // by action id
};

// ── Semantic operations ─────────────────────────────────────────────────────

/// Cn_Z(S): smallest superset of S closed under the state constraints.
/// std::nullopt when some fluent would acquire two of {f, -f, u(f)}.
std::optional<PartialState> closure(const PartialState& s, const Domain& dom);

/// Closure of an explicit literal list (which may be contradictory).
std::optional<PartialState> closure(std::span<const ExtLit> s, std::size_t fluent_count,
                                    const Domain& dom);

/// Whether σ is complete, consistent and closed under the constraints.
bool is_state(const StateSet& sigma, const Domain& dom);

/// E(a, σ): one extended literal per dynamic law with its action in a and
/// conditions holding in σ.  Sorted; may contain contradictory entries.
std::vector<ExtLit> direct_effects(const Action& a, const StateSet& sigma, const Domain& dom);

/// A ⋈ B = { A_i ∪ {b} | A_i ∈ A, b ∈ B } over extended-literal sets.
std::vector<std::vector<ExtLit>> join(const std::vector<std::vector<ExtLit>>& a,
                                      const std::vector<ExtLit>& b);

/// 𝔼(a, σ): the literal part of E(a, σ) joined with {f, -f, u(f)} for every
/// non-deterministic effect u(f) of E(a, σ).
std::vector<std::vector<ExtLit>> expansion(const Action& a, const StateSet& sigma,
                                           const Domain& dom);

/// False iff some executability law for an element of a fires in σ.
bool executable(const Action& a, const StateSet& sigma, const Domain& dom);

/// β(⟨σ, a, σ'⟩) = { f | u(f) ∈ E(a, σ), u(f) ∉ σ' }.
FluentSet branching_set(const StateSet& sigma, const Action& a, const StateSet& succ,
                        const Domain& dom);

// A successor state together with the branching set of its transition.
struct Transition {
    StateSet  successor;
    FluentSet branching;

    auto operator<=>(const Transition&) const = default;
};

/// All transitions from σ under a, sorted by successor.
/// Throws EmergentNondeterminismError when one expansion element admits two
/// distinct solutions of the successor-state equation.
std::vector<Transition> transitions(const StateSet& sigma, const Action& a, const Domain& dom);

// Memoizes transitions() per (σ, a); shared across one evaluation.
class TransitionCache {
public:
    const std::vector<Transition>& get(const StateSet& sigma, const Action& a, const Domain& dom);

private:
    struct Key {
        StateSet sigma;
        Action   action;
        bool operator==(const Key&) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept;
    };
    std::unordered_map<Key, std::vector<Transition>, KeyHash> map_;
};

/// Successor states of σ under a; with a qualifier, only those transitions
/// whose branching set equals it.  std::nullopt qualifier = no filter.
std::vector<StateSet> successors(const StateSet& sigma, const Action& a, const Domain& dom,
                                 const std::optional<Qualifier>& qualifier = std::nullopt);

// Collects the transitions traversed during model enumeration (DOT export).
struct TransitionTrace {
    struct Edge {
        StateSet  from;
        Action    action;
        FluentSet branching;
        StateSet  to;

        auto operator<=>(const Edge&) const = default;
    };
    std::vector<Edge> edges;

    void add(const StateSet& from, const Action& a, const FluentSet& b, const StateSet& to);
};

/// Models of [Σ, s]: all paths starting in Σ whose step-i branching set
/// equals the step-i qualifier.  An empty sequence yields one single-state
/// path per element of Σ.  Deterministic order (sorted initial states,
/// sorted successors).
std::vector<Path> models(std::span<const StateSet> sigma_set, const QualifiedActionSequence& s,
                         const Domain& dom, TransitionCache* cache = nullptr,
                         TransitionTrace* trace = nullptr);

/// Whether any path follows the action sequence from some state in Σ,
/// with no constraint on branching sets (reasoning by cases wherever useful).
bool any_model_exists(std::span<const StateSet> sigma_set, std::span<const Action> seq,
                      const Domain& dom, TransitionCache* cache = nullptr);

// ── Emergent non-determinism scan ───────────────────────────────────────────

struct EmergenceWitness {
    StateSet state;
    Action   action;
};

struct EmergenceReport {
    std::vector<EmergenceWitness> witnesses;
    bool clean() const noexcept { return witnesses.empty(); }
};

/// Scans every state of the description against every singleton action for
/// multiple solutions of the classical successor equation with the raw effect
/// set.  Exhaustive in the state space, hence capped by fluent count.
/// Throws CapExceededError when the signature exceeds the cap.
EmergenceReport check_emergent_nondeterminism(const Domain& dom, std::size_t fluent_cap = 14);

}  // namespace acir
