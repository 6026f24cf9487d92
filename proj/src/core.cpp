#include "acir/core.hpp"

#include <algorithm>

namespace acir {

const char* tri_name(Tri v) noexcept {
    switch (v) {
        case Tri::False: return "false";
        case Tri::True: return "true";
        case Tri::Unknown: return "unknown";
    }
    return "?";
}

void canonicalize(FluentSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool contains(const FluentSet& s, FluentId f) noexcept {
    return std::binary_search(s.begin(), s.end(), f);
}

void canonicalize_conditions(std::vector<FluentLiteral>& conds) {
    std::sort(conds.begin(), conds.end(), [](const FluentLiteral& a, const FluentLiteral& b) {
        if (a.positive != b.positive) return a.positive;
        return a.fluent < b.fluent;
    });
    conds.erase(std::unique(conds.begin(), conds.end()), conds.end());
}

Signature::Signature(std::vector<std::string> fluents, std::vector<std::string> actions)
    : fluents_(std::move(fluents)), actions_(std::move(actions)) {
    std::sort(fluents_.begin(), fluents_.end());
    fluents_.erase(std::unique(fluents_.begin(), fluents_.end()), fluents_.end());
    std::sort(actions_.begin(), actions_.end());
    actions_.erase(std::unique(actions_.begin(), actions_.end()), actions_.end());
}

std::optional<FluentId> Signature::fluent_index(const std::string& name) const noexcept {
    auto it = std::lower_bound(fluents_.begin(), fluents_.end(), name);
    if (it == fluents_.end() || *it != name) return std::nullopt;
    return static_cast<FluentId>(it - fluents_.begin());
}

std::optional<ActionId> Signature::action_index(const std::string& name) const noexcept {
    auto it = std::lower_bound(actions_.begin(), actions_.end(), name);
    if (it == actions_.end() || *it != name) return std::nullopt;
    return static_cast<ActionId>(it - actions_.begin());
}

void ActionDescription::canonicalize() {
    std::sort(laws.begin(), laws.end());
    laws.erase(std::unique(laws.begin(), laws.end()), laws.end());
}

std::string Score::to_string() const {
    return infinite ? "∞" : std::to_string(value);
}

namespace {

bool fluent_ok(const Source& s, FluentId f) { return f < s.signature.fluent_count(); }
bool action_ok(const Source& s, ActionId a) { return a < s.signature.action_count(); }

}  // namespace

std::vector<Violation> validate_source(const Source& s) {
    std::vector<Violation> report;
    auto add = [&](std::string m) { report.push_back(Violation{std::move(m)}); };

    if (s.signature.fluent_count() == 0) add("empty fluent set");

    for (const std::string& name : s.signature.fluent_names()) {
        if (s.signature.action_index(name))
            add("'" + name + "' is declared as both fluent and action");
    }

    for (FluentId f : s.defaults) {
        if (!fluent_ok(s, f)) add("default fluent outside signature");
    }

    // Initial set: in-signature and consistent (at most one sign per fluent).
    std::vector<std::uint8_t> seen(s.signature.fluent_count(), 0xff);
    for (const FluentLiteral& l : s.initial) {
        if (!fluent_ok(s, l.fluent)) {
            add("initial literal outside signature");
            continue;
        }
        std::uint8_t v = l.positive ? 1 : 0;
        if (seen[l.fluent] != 0xff && seen[l.fluent] != v) {
            add("inconsistent initial set: " + s.signature.fluent_name(l.fluent) +
                " and its complement");
        }
        seen[l.fluent] = v;
    }

    for (const Law& law : s.description.laws) {
        switch (law.kind) {
            case Law::Kind::Dynamic:
                if (!action_ok(s, law.action)) add("dynamic law action outside signature");
                if (!fluent_ok(s, law.consequence.fluent)) add("dynamic law consequence outside signature");
                break;
            case Law::Kind::StateConstraint:
                if (!fluent_ok(s, law.consequence.fluent)) add("state constraint head outside signature");
                if (law.consequence.value == Tri::Unknown)
                    add("proper extended literal in state constraint");
                break;
            case Law::Kind::Executability:
                if (!action_ok(s, law.action)) add("executability law action outside signature");
                break;
        }
        for (const FluentLiteral& c : law.conditions) {
            if (!fluent_ok(s, c.fluent)) add("law condition outside signature");
        }
    }

    for (std::size_t i = 0; i < s.sequence.size(); ++i) {
        const Action& a = s.sequence[i];
        if (a.empty()) add("empty action at sequence step " + std::to_string(i));
        for (ActionId e : a) {
            if (!action_ok(s, e)) add("sequence action outside signature");
        }
    }
    return report;
}

std::string literal_to_string(const Signature& sig, FluentLiteral l) {
    return l.positive ? sig.fluent_name(l.fluent) : "-" + sig.fluent_name(l.fluent);
}

std::string ext_to_string(const Signature& sig, ExtLit e) {
    switch (e.value) {
        case Tri::True: return sig.fluent_name(e.fluent);
        case Tri::False: return "-" + sig.fluent_name(e.fluent);
        case Tri::Unknown: return "u(" + sig.fluent_name(e.fluent) + ")";
    }
    return "?";
}

std::string action_to_string(const Signature& sig, const Action& a) {
    if (a.size() == 1) return sig.action_name(a.front());
    std::string out = "{";
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) out += ", ";
        out += sig.action_name(a[i]);
    }
    out += "}";
    return out;
}

}  // namespace acir
