// ============================================================================
// acir/core.hpp — value types shared by every stage of the pipeline
// ============================================================================
//
// A Source is parsed into an interned form: the Signature owns the fluent and
// elementary-action names (sorted, unique) and everything else refers to them
// by index (FluentId / ActionId).  All containers that represent sets are kept
// sorted and deduplicated so that equality, hashing and serialization are
// canonical.
//
// ============================================================================

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace acir {

using FluentId = std::uint16_t;
using ActionId = std::uint16_t;

// Three-valued truth assignment of a fluent inside a state.
enum class Tri : std::uint8_t { False = 0, True = 1, Unknown = 2 };

const char* tri_name(Tri v) noexcept;

// ── Literals ────────────────────────────────────────────────────────────────

struct FluentLiteral {
    FluentId fluent{0};
    bool     positive{true};

    auto operator<=>(const FluentLiteral&) const = default;
};

/// The complement of f is -f and vice-versa (an involution).
constexpr FluentLiteral complement(FluentLiteral l) noexcept {
    return FluentLiteral{l.fluent, !l.positive};
}

// An extended literal: f (True), -f (False) or u(f) (Unknown).
struct ExtLit {
    FluentId fluent{0};
    Tri      value{Tri::True};

    auto operator<=>(const ExtLit&) const = default;
};

constexpr ExtLit to_ext(FluentLiteral l) noexcept {
    return ExtLit{l.fluent, l.positive ? Tri::True : Tri::False};
}

// Sorted, deduplicated id sets.
using FluentSet = std::vector<FluentId>;
using ActionSet = std::vector<ActionId>;

// An action is a non-empty set of elementary actions.
using Action = ActionSet;

/// Sorts and deduplicates in place.
void canonicalize(FluentSet& s);
bool contains(const FluentSet& s, FluentId f) noexcept;

/// Canonical order for law condition lists: positive literals first, each
/// group by fluent.  Deduplicates.
void canonicalize_conditions(std::vector<FluentLiteral>& conds);

// ── Laws ────────────────────────────────────────────────────────────────────
//
// One struct covers the three law kinds:
//   Dynamic:        action causes consequence if conditions
//   StateConstraint: consequence(-as-head) if conditions
//   Executability:  impossible action if conditions
//
// The head of a state constraint reuses `consequence`; a well-formed
// constraint never carries Tri::Unknown there (validate_source reports it).

struct Law {
    enum class Kind : std::uint8_t { Dynamic = 0, StateConstraint = 1, Executability = 2 };

    Kind                       kind{Kind::Dynamic};
    ActionId                   action{0};       // Dynamic, Executability
    ExtLit                     consequence{};   // Dynamic (λ), StateConstraint (head)
    std::vector<FluentLiteral> conditions;      // sorted

    auto operator<=>(const Law&) const = default;
};

// ── Signature, description, source ──────────────────────────────────────────

class Signature {
public:
    Signature() = default;
    // Names are sorted and deduplicated; fluent and action names must be disjoint.
    Signature(std::vector<std::string> fluents, std::vector<std::string> actions);

    std::size_t fluent_count() const noexcept { return fluents_.size(); }
    std::size_t action_count() const noexcept { return actions_.size(); }

    const std::string& fluent_name(FluentId f) const { return fluents_.at(f); }
    const std::string& action_name(ActionId a) const { return actions_.at(a); }

    std::optional<FluentId> fluent_index(const std::string& name) const noexcept;
    std::optional<ActionId> action_index(const std::string& name) const noexcept;

    const std::vector<std::string>& fluent_names() const noexcept { return fluents_; }
    const std::vector<std::string>& action_names() const noexcept { return actions_; }

    bool operator==(const Signature&) const = default;

private:
    std::vector<std::string> fluents_;  // sorted
    std::vector<std::string> actions_;  // sorted
};

struct ActionDescription {
    std::vector<Law> laws;  // sorted, unique

    void canonicalize();
    bool operator==(const ActionDescription&) const = default;
};

// A source: signature, default fluents, laws, initial literals, action sequence.
struct Source {
    std::string                id;
    Signature                  signature;
    FluentSet                  defaults;  // 𝒟 ⊆ 𝓕
    ActionDescription          description;
    std::vector<FluentLiteral> initial;   // consistent, sorted
    std::vector<Action>        sequence;  // each step non-empty

    bool operator==(const Source&) const = default;
};

// A query is a single (positive) fluent, kept by name so the same query file
// can be evaluated against many sources.
struct Query {
    std::string fluent;

    bool operator==(const Query&) const = default;
};

// ── Scores ──────────────────────────────────────────────────────────────────

// A semantic score: a natural number or infinity (irrelevant source).
struct Score {
    std::uint32_t value{0};
    bool          infinite{false};

    static constexpr Score infinity() noexcept { return Score{0, true}; }
    static constexpr Score finite(std::uint32_t v) noexcept { return Score{v, false}; }

    bool operator==(const Score& o) const noexcept {
        return infinite == o.infinite && (infinite || value == o.value);
    }
    bool operator<(const Score& o) const noexcept {
        if (infinite != o.infinite) return !infinite;
        return !infinite && value < o.value;
    }

    std::string to_string() const;  // "∞" or decimal
};

// ── Validation ──────────────────────────────────────────────────────────────

struct Violation {
    std::string message;
};

/// Structural validation: signature closure, consistency of the initial set,
/// defaults within the signature, well-formed laws, non-empty sequence steps.
/// Pure; an empty report means the source satisfies every type invariant.
/// Emergent non-determinism is not checked here (see transition semantics).
std::vector<Violation> validate_source(const Source& s);

// ── Errors ──────────────────────────────────────────────────────────────────

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class QueryNotInSignatureError : public Error {
public:
    explicit QueryNotInSignatureError(const std::string& name)
        : Error("query fluent not in signature: " + name), fluent(name) {}
    std::string fluent;
};

class CapExceededError : public Error {
public:
    using Error::Error;
};

// Raised when a fixed effect set admits more than one successor state.
class EmergentNondeterminismError : public Error {
public:
    using Error::Error;
};

// ── Printing ────────────────────────────────────────────────────────────────

std::string literal_to_string(const Signature& sig, FluentLiteral l);
std::string ext_to_string(const Signature& sig, ExtLit e);
std::string action_to_string(const Signature& sig, const Action& a);

}  // namespace acir
