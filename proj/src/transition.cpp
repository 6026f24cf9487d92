#include "acir/transition.hpp"

#include <algorithm>
#include <cassert>

namespace acir {

// ── PartialState / StateSet ─────────────────────────────────────────────────

bool PartialState::complete() const noexcept {
    for (std::uint8_t s : slots_)
        if (s == kUnset) return false;
    return true;
}

std::size_t PartialState::assigned_count() const noexcept {
    std::size_t n = 0;
    for (std::uint8_t s : slots_)
        if (s != kUnset) ++n;
    return n;
}

std::vector<ExtLit> PartialState::literals() const {
    std::vector<ExtLit> out;
    for (FluentId f = 0; f < slots_.size(); ++f)
        if (slots_[f] != kUnset) out.push_back(ExtLit{f, static_cast<Tri>(slots_[f])});
    return out;
}

std::vector<FluentLiteral> PartialState::plain_literals() const {
    std::vector<FluentLiteral> out;
    for (FluentId f = 0; f < slots_.size(); ++f) {
        if (slots_[f] == static_cast<std::uint8_t>(Tri::True)) out.push_back({f, true});
        else if (slots_[f] == static_cast<std::uint8_t>(Tri::False)) out.push_back({f, false});
    }
    return out;
}

StateSet::StateSet(const PartialState& ps) {
    assert(ps.complete());
    values_.reserve(ps.fluent_count());
    for (FluentId f = 0; f < ps.fluent_count(); ++f) values_.push_back(*ps.get(f));
}

std::vector<ExtLit> StateSet::literals() const {
    std::vector<ExtLit> out;
    out.reserve(values_.size());
    for (FluentId f = 0; f < values_.size(); ++f) out.push_back(ExtLit{f, values_[f]});
    return out;
}

PartialState StateSet::to_partial() const {
    PartialState ps(values_.size());
    for (FluentId f = 0; f < values_.size(); ++f) ps.assign(f, values_[f]);
    return ps;
}

std::size_t StateSetHash::operator()(const StateSet& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (FluentId f = 0; f < s.fluent_count(); ++f) {
        h ^= static_cast<std::size_t>(s.at(f)) + 1;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string state_to_string(const Signature& sig, const StateSet& s) {
    std::string out = "{";
    for (FluentId f = 0; f < s.fluent_count(); ++f) {
        if (f) out += ", ";
        out += ext_to_string(sig, ExtLit{f, s.at(f)});
    }
    out += "}";
    return out;
}

// ── Sequences and paths ─────────────────────────────────────────────────────

QualifiedActionSequence with_empty_qualifiers(std::span<const Action> seq) {
    QualifiedActionSequence s;
    s.reserve(seq.size());
    for (const Action& a : seq) s.push_back(QualifiedStep{a, {}});
    return s;
}

std::size_t branching_degree(const QualifiedActionSequence& s) {
    std::size_t d = 0;
    for (const QualifiedStep& step : s) d += step.qualifier.size();
    return d;
}

bool entails(const Path& pi, FluentLiteral l) { return pi.final().holds(l); }

bool entails_pm(const Path& pi, FluentId f) { return pi.final().at(f) != Tri::Unknown; }

// ── Domain ──────────────────────────────────────────────────────────────────

Domain::Domain(const Source& src) : Domain(src.signature, src.description, src.defaults) {}

Domain::Domain(const Signature& sig, const ActionDescription& ad, FluentSet defaults)
    : sig_(&sig), defaults_(std::move(defaults)) {
    acir::canonicalize(defaults_);
    dynamic_.resize(sig.action_count());
    executability_.resize(sig.action_count());
    for (const Law& law : ad.laws) {
        switch (law.kind) {
            case Law::Kind::Dynamic: dynamic_[law.action].push_back(law); break;
            case Law::Kind::StateConstraint: constraints_.push_back(law); break;
            case Law::Kind::Executability: executability_[law.action].push_back(law); break;
        }
    }
}

FluentSet Domain::non_defaults() const {
    FluentSet out;
    for (FluentId f = 0; f < fluent_count(); ++f)
        if (!is_default(f)) out.push_back(f);
    return out;
}

FluentSet Domain::potential_u_effects(const Action& a) const {
    FluentSet out;
    for (ActionId e : a)
        for (const Law& law : dynamic_[e])
            if (law.consequence.value == Tri::Unknown) out.push_back(law.consequence.fluent);
    acir::canonicalize(out);
    return out;
}

// ── Closure ─────────────────────────────────────────────────────────────────

namespace {

bool conditions_hold(const std::vector<FluentLiteral>& conds, const PartialState& ps) {
    for (const FluentLiteral& c : conds) {
        if (ps.get(c.fluent) != (c.positive ? Tri::True : Tri::False)) return false;
    }
    return true;
}

bool conditions_hold(const std::vector<FluentLiteral>& conds, const StateSet& s) {
    for (const FluentLiteral& c : conds)
        if (!s.holds(c)) return false;
    return true;
}

}  // namespace

std::optional<PartialState> closure(const PartialState& s, const Domain& dom) {
    PartialState out = s;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Law& z : dom.constraints()) {
            if (!conditions_hold(z.conditions, out)) continue;
            const ExtLit& head = z.consequence;
            auto cur = out.get(head.fluent);
            if (cur == head.value) continue;
            if (cur.has_value()) return std::nullopt;  // two of {f, -f, u(f)}
            out.assign(head.fluent, head.value);
            changed = true;
        }
    }
    return out;
}

std::optional<PartialState> closure(std::span<const ExtLit> s, std::size_t fluent_count,
                                    const Domain& dom) {
    PartialState ps(fluent_count);
    for (const ExtLit& e : s)
        if (!ps.assign(e.fluent, e.value)) return std::nullopt;
    return closure(ps, dom);
}

bool is_state(const StateSet& sigma, const Domain& dom) {
    if (sigma.fluent_count() != dom.fluent_count()) return false;
    for (const Law& z : dom.constraints()) {
        if (conditions_hold(z.conditions, sigma) && sigma.at(z.consequence.fluent) != z.consequence.value)
            return false;
    }
    return true;
}

// ── Effects and expansion ───────────────────────────────────────────────────

std::vector<ExtLit> direct_effects(const Action& a, const StateSet& sigma, const Domain& dom) {
    std::vector<ExtLit> out;
    for (ActionId e : a) {
        for (const Law& law : dom.dynamic_for(e)) {
            if (conditions_hold(law.conditions, sigma)) out.push_back(law.consequence);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::vector<ExtLit>> join(const std::vector<std::vector<ExtLit>>& a,
                                      const std::vector<ExtLit>& b) {
    std::vector<std::vector<ExtLit>> out;
    out.reserve(a.size() * b.size());
    for (const std::vector<ExtLit>& ai : a) {
        for (const ExtLit& lit : b) {
            std::vector<ExtLit> merged = ai;
            merged.push_back(lit);
            std::sort(merged.begin(), merged.end());
            merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
            out.push_back(std::move(merged));
        }
    }
    return out;
}

namespace {

std::vector<std::vector<ExtLit>> expansion_of(const std::vector<ExtLit>& effects) {
    std::vector<ExtLit> lit_part;
    FluentSet u_fluents;
    for (const ExtLit& e : effects) {
        if (e.value == Tri::Unknown) u_fluents.push_back(e.fluent);
        else lit_part.push_back(e);
    }
    canonicalize(u_fluents);
    std::vector<std::vector<ExtLit>> result{lit_part};
    for (FluentId f : u_fluents) {
        result = join(result, {ExtLit{f, Tri::True}, ExtLit{f, Tri::False}, ExtLit{f, Tri::Unknown}});
    }
    return result;
}

}  // namespace

std::vector<std::vector<ExtLit>> expansion(const Action& a, const StateSet& sigma,
                                           const Domain& dom) {
    return expansion_of(direct_effects(a, sigma, dom));
}

bool executable(const Action& a, const StateSet& sigma, const Domain& dom) {
    for (ActionId e : a) {
        for (const Law& law : dom.executability_for(e)) {
            if (conditions_hold(law.conditions, sigma)) return false;
        }
    }
    return true;
}

namespace {

FluentSet branching_of(const std::vector<ExtLit>& effects, const StateSet& succ) {
    FluentSet out;
    for (const ExtLit& e : effects) {
        if (e.value == Tri::Unknown && succ.at(e.fluent) != Tri::Unknown) out.push_back(e.fluent);
    }
    canonicalize(out);
    return out;
}

// All complete consistent solutions of σ' = Cn_Z(W ∪ (σ ∩ σ')) for one fixed
// literal set W, found by enumerating inertia kernels T ⊆ 𝓕 ∖ dom(W).
std::vector<StateSet> equation_solutions(const StateSet& sigma, const std::vector<ExtLit>& w,
                                         const Domain& dom) {
    const std::size_t n = dom.fluent_count();
    PartialState base(n);
    for (const ExtLit& e : w)
        if (!base.assign(e.fluent, e.value)) return {};  // W itself contradictory

    FluentSet free;
    for (FluentId f = 0; f < n; ++f)
        if (!base.has(f)) free.push_back(f);
    if (free.size() > 24)
        throw CapExceededError("successor-state equation over " + std::to_string(free.size()) +
                               " undetermined fluents is out of scale");

    std::vector<StateSet> found;
    const std::uint64_t subsets = 1ull << free.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        PartialState u = base;
        for (std::size_t i = 0; i < free.size(); ++i)
            if (mask & (1ull << i)) u.assign(free[i], sigma.at(free[i]));
        auto closed = closure(u, dom);
        if (!closed || !closed->complete()) continue;
        StateSet candidate(*closed);

        // Exact check of the equation with the candidate's own agreement set.
        PartialState arg = base;
        bool ok = true;
        for (FluentId f = 0; f < n; ++f) {
            if (sigma.at(f) == candidate.at(f) && !arg.assign(f, sigma.at(f))) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        auto verify = closure(arg, dom);
        if (!verify || !verify->complete() || StateSet(*verify) != candidate) continue;

        if (std::find(found.begin(), found.end(), candidate) == found.end())
            found.push_back(candidate);
    }
    std::sort(found.begin(), found.end());
    return found;
}

}  // namespace

FluentSet branching_set(const StateSet& sigma, const Action& a, const StateSet& succ,
                        const Domain& dom) {
    return branching_of(direct_effects(a, sigma, dom), succ);
}

std::vector<Transition> transitions(const StateSet& sigma, const Action& a, const Domain& dom) {
    std::vector<Transition> out;
    if (!executable(a, sigma, dom)) return out;
    const std::vector<ExtLit> effects = direct_effects(a, sigma, dom);
    for (const std::vector<ExtLit>& w : expansion_of(effects)) {
        std::vector<StateSet> solutions = equation_solutions(sigma, w, dom);
        if (solutions.size() > 1) {
            std::string detail = "emergent non-determinism at state " +
                                 state_to_string(dom.signature(), sigma) + " under action " +
                                 action_to_string(dom.signature(), a);
            throw EmergentNondeterminismError(detail);
        }
        for (StateSet& succ : solutions) {
            FluentSet beta = branching_of(effects, succ);
            Transition t{std::move(succ), std::move(beta)};
            if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(std::move(t));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::size_t TransitionCache::KeyHash::operator()(const Key& k) const noexcept {
    std::size_t h = StateSetHash{}(k.sigma);
    for (ActionId e : k.action) {
        h ^= static_cast<std::size_t>(e) + 0x9e3779b9 + (h << 6) + (h >> 2);
    }
    return h;
}

const std::vector<Transition>& TransitionCache::get(const StateSet& sigma, const Action& a,
                                                    const Domain& dom) {
    Key key{sigma, a};
    auto it = map_.find(key);
    if (it != map_.end()) return it->second;
    return map_.emplace(std::move(key), transitions(sigma, a, dom)).first->second;
}

std::vector<StateSet> successors(const StateSet& sigma, const Action& a, const Domain& dom,
                                 const std::optional<Qualifier>& qualifier) {
    std::vector<StateSet> out;
    for (const Transition& t : transitions(sigma, a, dom)) {
        if (!qualifier || t.branching == *qualifier) out.push_back(t.successor);
    }
    return out;
}

void TransitionTrace::add(const StateSet& from, const Action& a, const FluentSet& b,
                          const StateSet& to) {
    Edge e{from, a, b, to};
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) edges.push_back(std::move(e));
}

// ── Model enumeration ───────────────────────────────────────────────────────

namespace {

std::vector<StateSet> sorted_unique(std::span<const StateSet> states) {
    std::vector<StateSet> out(states.begin(), states.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void extend_models(Path& prefix, const QualifiedActionSequence& s, std::size_t step,
                   const Domain& dom, TransitionCache* cache, TransitionTrace* trace,
                   std::vector<Path>& out) {
    if (step == s.size()) {
        out.push_back(prefix);
        return;
    }
    const StateSet& here = prefix.states.back();
    const Action& a = s[step].action;
    std::vector<Transition> computed;
    if (!cache) computed = transitions(here, a, dom);
    const std::vector<Transition>& ts = cache ? cache->get(here, a, dom) : computed;
    for (const Transition& t : ts) {
        if (t.branching != s[step].qualifier) continue;
        if (trace) trace->add(here, a, t.branching, t.successor);
        prefix.states.push_back(t.successor);
        prefix.actions.push_back(a);
        extend_models(prefix, s, step + 1, dom, cache, trace, out);
        prefix.states.pop_back();
        prefix.actions.pop_back();
    }
}

bool extend_exists(const StateSet& here, std::span<const Action> seq, std::size_t step,
                   const Domain& dom, TransitionCache& cache) {
    if (step == seq.size()) return true;
    for (const Transition& t : cache.get(here, seq[step], dom)) {
        if (extend_exists(t.successor, seq, step + 1, dom, cache)) return true;
    }
    return false;
}

}  // namespace

std::vector<Path> models(std::span<const StateSet> sigma_set, const QualifiedActionSequence& s,
                         const Domain& dom, TransitionCache* cache, TransitionTrace* trace) {
    std::vector<Path> out;
    for (const StateSet& sigma : sorted_unique(sigma_set)) {
        Path prefix;
        prefix.states.push_back(sigma);
        extend_models(prefix, s, 0, dom, cache, trace, out);
    }
    return out;
}

bool any_model_exists(std::span<const StateSet> sigma_set, std::span<const Action> seq,
                      const Domain& dom, TransitionCache* cache) {
    TransitionCache local;
    TransitionCache& c = cache ? *cache : local;
    for (const StateSet& sigma : sorted_unique(sigma_set)) {
        if (extend_exists(sigma, seq, 0, dom, c)) return true;
    }
    return false;
}

// ── Emergent non-determinism scan ───────────────────────────────────────────

EmergenceReport check_emergent_nondeterminism(const Domain& dom, std::size_t fluent_cap) {
    const std::size_t n = dom.fluent_count();
    if (n > fluent_cap) {
        throw CapExceededError("emergent-non-determinism scan skipped: " + std::to_string(n) +
                               " fluents exceed cap " + std::to_string(fluent_cap));
    }
    EmergenceReport report;
    std::vector<Tri> values(n, Tri::False);
    // Odometer over all complete three-valued assignments.
    while (true) {
        StateSet sigma(values);
        if (is_state(sigma, dom)) {
            for (ActionId e = 0; e < dom.signature().action_count(); ++e) {
                Action a{e};
                if (!executable(a, sigma, dom)) continue;
                std::vector<ExtLit> effects = direct_effects(a, sigma, dom);
                if (equation_solutions(sigma, effects, dom).size() > 1) {
                    report.witnesses.push_back(EmergenceWitness{sigma, a});
                }
            }
        }
        std::size_t i = 0;
        for (; i < n; ++i) {
            if (values[i] != Tri::Unknown) {
                values[i] = static_cast<Tri>(static_cast<std::uint8_t>(values[i]) + 1);
                break;
            }
            values[i] = Tri::False;
        }
        if (i == n) break;
    }
    return report;
}

}  // namespace acir
