// ============================================================================
// acir/asp_emitter.hpp — logic-program text for cross-validation
// ============================================================================
//
// Emits the answer-set program whose answer sets encode the models of
// [γ(I, F), s]: per-law rules, two consistency constraints, three inertia
// axioms over extended literals, six initial-state axioms (g1/g2/g3), and
// facts for the defaults, the initial literals, the forced fluents and the
// qualified sequence.  Emission is one-directional; no answer sets are parsed
// back.  Output is deterministic, one rule per line.
//
// ============================================================================

#pragma once

#include <string>
#include <vector>

#include "acir/core.hpp"
#include "acir/transition.hpp"

namespace acir {

struct EmitStats {
    std::size_t law_dynamic{0};
    std::size_t law_constraint{0};
    std::size_t law_executability{0};
    std::size_t consistency{0};
    std::size_t inertia{0};
    std::size_t g_axioms{0};
    std::size_t domain_facts{0};
    std::size_t argument_facts{0};
};

struct EmittedProgram {
    std::vector<std::string> rules;  // comments included, one entry per line
    std::size_t              horizon{0};  // number of steps (|s|)
    EmitStats                stats;

    std::string text() const;
};

/// Π over the source's own initial literals.
EmittedProgram emit_program(const Source& src, const FluentSet& forced,
                            const QualifiedActionSequence& s);

/// Π over an explicit initial literal set (the general form).
EmittedProgram emit_program(const Source& src, const std::vector<FluentLiteral>& initial,
                            const FluentSet& forced, const QualifiedActionSequence& s);

// The three programs FindMatch queries:
//   Expansion — forces every non-default fluent and splits every fluent at
//               every step (the conservative-expansion check);
//   C1        — runs args.forced / args.sequence from the conservatively
//               expanded initial set;
//   C2        — empty sequence over args.stripped (the assumption residue).
enum class FindMatchStage { Expansion, C1, C2 };

struct StageArgs {
    FluentSet                  forced;    // C1
    QualifiedActionSequence    sequence;  // C1
    std::vector<FluentLiteral> stripped;  // C2
};

/// Throws Error for stage C1 when the conservative expansion does not exist.
EmittedProgram emit_for_findmatch_stage(const Source& src, FindMatchStage stage,
                                        const StageArgs& args = {});

}  // namespace acir
