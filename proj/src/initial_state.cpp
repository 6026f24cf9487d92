#include "acir/initial_state.hpp"

#include <algorithm>
#include <cassert>

namespace acir {

std::vector<PartialState> force(const PartialState& i, FluentId f, const Domain& dom) {
    const auto current = i.get(f);
    if (dom.is_default(f)) {
        // Hypothesize the exception unless -f or u(f) is already stated.
        if (current == Tri::False || current == Tri::Unknown) return {i};
        PartialState pos = i;
        pos.assign(f, Tri::True);
        return {pos};
    }
    if (current.has_value()) return {i};
    PartialState pos = i, neg = i;
    pos.assign(f, Tri::True);
    neg.assign(f, Tri::False);
    return {pos, neg};
}

std::vector<PartialState> force_all(const PartialState& i, const FluentSet& f, const Domain& dom) {
    std::vector<PartialState> out{i};
    FluentSet sorted = f;
    canonicalize(sorted);
    for (FluentId fl : sorted) {
        std::vector<PartialState> next;
        for (const PartialState& variant : out) {
            for (PartialState& forced : force(variant, fl, dom)) next.push_back(std::move(forced));
        }
        out = std::move(next);
    }
    return out;
}

std::optional<StateSet> complete(const PartialState& i, const Domain& dom) {
    PartialState expanded = i;
    for (FluentId f : dom.defaults()) {
        if (expanded.get(f) != Tri::True) expanded.assign(f, Tri::False);
    }
    auto closed = closure(expanded, dom);
    if (!closed) return std::nullopt;
    for (FluentId f = 0; f < closed->fluent_count(); ++f) {
        if (!closed->has(f)) closed->assign(f, Tri::Unknown);
    }
    return StateSet(*closed);
}

Completion completion_set(const PartialState& i, const FluentSet& f, const Domain& dom) {
    Completion out;
    out.degree = f.size();
    for (const PartialState& variant : force_all(i, f, dom)) {
        if (auto state = complete(variant, dom)) out.states.push_back(std::move(*state));
    }
    std::sort(out.states.begin(), out.states.end());
    out.states.erase(std::unique(out.states.begin(), out.states.end()), out.states.end());
    return out;
}

std::optional<PartialState> conservative_expansion(const PartialState& i,
                                                   std::span<const Action> seq,
                                                   const Domain& dom, TransitionCache* cache) {
    std::vector<PartialState> qualifying;
    for (const PartialState& variant : force_all(i, dom.non_defaults(), dom)) {
        auto state = complete(variant, dom);
        if (!state) continue;
        const StateSet start[] = {*state};
        if (any_model_exists(start, seq, dom, cache)) qualifying.push_back(variant);
    }
    if (qualifying.empty()) return std::nullopt;

    PartialState eps(dom.fluent_count());
    for (FluentId f = 0; f < dom.fluent_count(); ++f) {
        const auto v = qualifying.front().get(f);
        if (!v) continue;
        bool shared = true;
        for (std::size_t k = 1; k < qualifying.size() && shared; ++k)
            shared = qualifying[k].get(f) == v;
        if (shared) eps.assign(f, *v);
    }
    return eps;
}

PartialState initial_of(const Source& src) {
    PartialState i(src.signature.fluent_count());
    for (const FluentLiteral& l : src.initial) {
        bool ok = i.assign(l.fluent, l.positive ? Tri::True : Tri::False);
        assert(ok && "Source.initial must be consistent");
        (void)ok;
    }
    return i;
}

}  // namespace acir
