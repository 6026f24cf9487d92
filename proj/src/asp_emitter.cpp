#include "acir/asp_emitter.hpp"

#include <algorithm>

#include "acir/initial_state.hpp"

namespace acir {

namespace {

std::string chi(const Signature& sig, FluentLiteral l, const std::string& step) {
    const std::string& name = sig.fluent_name(l.fluent);
    return (l.positive ? "holds(" : "-holds(") + name + "," + step + ")";
}

std::string body_conditions(const Signature& sig, const std::vector<FluentLiteral>& conds,
                            const std::string& step) {
    std::string out;
    for (const FluentLiteral& c : conds) out += ", " + chi(sig, c, step);
    return out;
}

std::string qualified_sequence_comment(const Signature& sig, const QualifiedActionSequence& s) {
    std::string out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) out += "; ";
        out += action_to_string(sig, s[i].action) + "/{";
        for (std::size_t k = 0; k < s[i].qualifier.size(); ++k)
            out += (k ? ", " : "") + sig.fluent_name(s[i].qualifier[k]);
        out += "}";
    }
    return out.empty() ? "(empty)" : out;
}

}  // namespace

std::string EmittedProgram::text() const {
    std::string out;
    for (const std::string& r : rules) {
        out += r;
        out += "\n";
    }
    return out;
}

EmittedProgram emit_program(const Source& src, const FluentSet& forced,
                            const QualifiedActionSequence& s) {
    return emit_program(src, src.initial, forced, s);
}

EmittedProgram emit_program(const Source& src, const std::vector<FluentLiteral>& initial,
                            const FluentSet& forced, const QualifiedActionSequence& s) {
    const Signature& sig = src.signature;
    EmittedProgram prog;
    prog.horizon = s.size();
    auto line = [&](std::string text) { prog.rules.push_back(std::move(text)); };

    std::string forced_names = "{";
    for (std::size_t i = 0; i < forced.size(); ++i)
        forced_names += (i ? ", " : "") + sig.fluent_name(forced[i]);
    forced_names += "}";

    line("% source: " + (src.id.empty() ? std::string("(unnamed)") : src.id));
    line("% forced: " + forced_names);
    line("% sequence: " + qualified_sequence_comment(sig, s));
    line("% horizon: " + std::to_string(prog.horizon));

    line("% domains");
    for (const std::string& f : sig.fluent_names()) {
        line("fluent(" + f + ").");
        ++prog.stats.domain_facts;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        line("step(" + std::to_string(i) + ").");
        ++prog.stats.domain_facts;
    }

    line("% laws");
    ActionDescription canon = src.description;
    canon.canonicalize();
    for (const Law& law : canon.laws) {
        switch (law.kind) {
            case Law::Kind::Dynamic: {
                const std::string occurs = "occurs(" + sig.action_name(law.action) + ",I)";
                const std::string conds = body_conditions(sig, law.conditions, "I");
                if (law.consequence.value == Tri::Unknown) {
                    const std::string f = sig.fluent_name(law.consequence.fluent);
                    line("u(" + f + ",I+1) :- " + occurs + conds + ", not split(" + f +
                         ",I), step(I).");
                    line("holds(" + f + ",I+1) | -holds(" + f + ",I+1) :- " + occurs + conds +
                         ", split(" + f + ",I), step(I).");
                    prog.stats.law_dynamic += 2;
                } else {
                    const FluentLiteral head{law.consequence.fluent,
                                             law.consequence.value == Tri::True};
                    line(chi(sig, head, "I+1") + " :- " + occurs + conds + ", step(I).");
                    ++prog.stats.law_dynamic;
                }
                break;
            }
            case Law::Kind::StateConstraint: {
                const FluentLiteral head{law.consequence.fluent,
                                         law.consequence.value == Tri::True};
                if (law.conditions.empty()) {
                    // Unconditional constraint (unreachable from the grammar):
                    // the head holds at every state index, emitted ground.
                    for (std::size_t i = 0; i <= s.size(); ++i)
                        line(chi(sig, head, std::to_string(i)) + ".");
                } else {
                    std::string body;
                    for (std::size_t i = 0; i < law.conditions.size(); ++i)
                        body += (i ? ", " : "") + chi(sig, law.conditions[i], "I");
                    line(chi(sig, head, "I") + " :- " + body + ".");
                }
                ++prog.stats.law_constraint;
                break;
            }
            case Law::Kind::Executability: {
                line(":- occurs(" + sig.action_name(law.action) + ",I)" +
                     body_conditions(sig, law.conditions, "I") + ", step(I).");
                ++prog.stats.law_executability;
                break;
            }
        }
    }

    line("% consistency");
    line(":- holds(F,I), u(F,I).");
    line(":- -holds(F,I), u(F,I).");
    prog.stats.consistency = 2;

    line("% inertia");
    line("holds(F,I+1) :- holds(F,I), not -holds(F,I+1), not u(F,I+1), step(I).");
    line("-holds(F,I+1) :- -holds(F,I), not holds(F,I+1), not u(F,I+1), step(I).");
    line("u(F,I+1) :- u(F,I), not holds(F,I+1), not -holds(F,I+1), step(I).");
    prog.stats.inertia = 3;

    line("% initial state");
    line("holds(F,0) :- init(F).");
    line("-holds(F,0) :- -init(F).");
    line("holds(F,0) :- forced(F), default(F), not -init(F).");
    line("holds(F,0) | -holds(F,0) :- forced(F), not default(F), not init(F), not -init(F).");
    line("-holds(F,0) :- default(F), not holds(F,0).");
    line("u(F,0) :- not default(F), not holds(F,0), not -holds(F,0), fluent(F).");
    prog.stats.g_axioms = 6;

    line("% facts");
    auto fact = [&](std::string text) {
        line(std::move(text));
        ++prog.stats.argument_facts;
    };
    for (FluentId f : src.defaults) fact("default(" + sig.fluent_name(f) + ").");
    std::vector<FluentLiteral> init_sorted = initial;
    std::sort(init_sorted.begin(), init_sorted.end());
    for (const FluentLiteral& l : init_sorted)
        fact((l.positive ? "init(" : "-init(") + sig.fluent_name(l.fluent) + ").");
    for (FluentId f : forced) fact("forced(" + sig.fluent_name(f) + ").");
    for (std::size_t i = 0; i < s.size(); ++i)
        for (ActionId e : s[i].action)
            fact("occurs(" + sig.action_name(e) + "," + std::to_string(i) + ").");
    for (std::size_t i = 0; i < s.size(); ++i)
        for (FluentId f : s[i].qualifier)
            fact("split(" + sig.fluent_name(f) + "," + std::to_string(i) + ").");

    return prog;
}

EmittedProgram emit_for_findmatch_stage(const Source& src, FindMatchStage stage,
                                        const StageArgs& args) {
    switch (stage) {
        case FindMatchStage::Expansion: {
            const Domain dom(src);
            QualifiedActionSequence all_split;
            FluentSet every_fluent;
            for (FluentId f = 0; f < src.signature.fluent_count(); ++f) every_fluent.push_back(f);
            for (const Action& a : src.sequence)
                all_split.push_back(QualifiedStep{a, every_fluent});
            return emit_program(src, src.initial, dom.non_defaults(), all_split);
        }
        case FindMatchStage::C1: {
            const Domain dom(src);
            auto eps = conservative_expansion(initial_of(src), src.sequence, dom);
            if (!eps) throw Error("conservative expansion does not exist for '" + src.id + "'");
            // Default to the first candidate FindMatch tries: F = ∅, s = ℵ?.
            QualifiedActionSequence seq = args.sequence;
            if (seq.empty() && !src.sequence.empty()) seq = with_empty_qualifiers(src.sequence);
            return emit_program(src, eps->plain_literals(), args.forced, seq);
        }
        case FindMatchStage::C2:
            return emit_program(src, args.stripped, {}, {});
    }
    throw Error("unreachable stage");
}

}  // namespace acir
