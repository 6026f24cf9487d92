// Shared test utilities: fixture loading, compact builders for states,
// literals and sequences, and a deterministic RNG for randomized suites.

#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#ifndef ACIR_FIXTURE_DIR
#define ACIR_FIXTURE_DIR ""
#endif

#include "acir/core.hpp"
#include "acir/parser.hpp"
#include "acir/transition.hpp"

namespace acir::test {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline Source load_fixture(const std::string& name) {
    const std::string path = std::string(ACIR_FIXTURE_DIR) + "/" + name + ".acir";
    return parse_source(read_file(path), name);
}

inline FluentId fid(const Source& src, const std::string& name) {
    auto id = src.signature.fluent_index(name);
    if (!id) throw std::runtime_error("no fluent " + name);
    return *id;
}

inline ActionId aid(const Source& src, const std::string& name) {
    auto id = src.signature.action_index(name);
    if (!id) throw std::runtime_error("no action " + name);
    return *id;
}

// "m -ab u(x)" -> literal vector; prefix '-' negates, u(...) marks unknown.
inline std::vector<ExtLit> lits(const Source& src, const std::string& spec) {
    std::vector<ExtLit> out;
    std::istringstream in(spec);
    std::string tok;
    while (in >> tok) {
        Tri value = Tri::True;
        if (tok.rfind("u(", 0) == 0 && tok.back() == ')') {
            value = Tri::Unknown;
            tok = tok.substr(2, tok.size() - 3);
        } else if (tok.front() == '-') {
            value = Tri::False;
            tok = tok.substr(1);
        }
        out.push_back(ExtLit{fid(src, tok), value});
    }
    return out;
}

inline FluentLiteral lit(const Source& src, const std::string& spec) {
    const std::vector<ExtLit> parsed = lits(src, spec);
    if (parsed.size() != 1 || parsed.front().value == Tri::Unknown)
        throw std::runtime_error("not a plain literal: " + spec);
    return FluentLiteral{parsed.front().fluent, parsed.front().value == Tri::True};
}

// Complete state from a literal spec; every fluent must appear exactly once.
inline StateSet st(const Source& src, const std::string& spec) {
    PartialState ps(src.signature.fluent_count());
    for (const ExtLit& e : lits(src, spec)) {
        if (!ps.assign(e.fluent, e.value)) throw std::runtime_error("conflicting state: " + spec);
    }
    if (!ps.complete()) throw std::runtime_error("incomplete state: " + spec);
    return StateSet(ps);
}

inline PartialState partial(const Source& src, const std::string& spec) {
    PartialState ps(src.signature.fluent_count());
    for (const ExtLit& e : lits(src, spec)) {
        if (!ps.assign(e.fluent, e.value)) throw std::runtime_error("conflicting set: " + spec);
    }
    return ps;
}

// "e1 e2" -> Action (set of elementary actions).
inline Action act(const Source& src, const std::string& spec) {
    Action a;
    std::istringstream in(spec);
    std::string tok;
    while (in >> tok) a.push_back(aid(src, tok));
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

inline FluentSet fset(const Source& src, const std::string& spec) {
    FluentSet out;
    std::istringstream in(spec);
    std::string tok;
    while (in >> tok) out.push_back(fid(src, tok));
    canonicalize(out);
    return out;
}

// "d/ ; w/ ; fd/m" -> qualified sequence (step actions separated by ';',
// qualifier fluents after '/').
inline QualifiedActionSequence qseq(const Source& src, const std::string& spec) {
    QualifiedActionSequence out;
    std::istringstream in(spec);
    std::string step;
    while (std::getline(in, step, ';')) {
        const auto slash = step.find('/');
        const std::string actions = step.substr(0, slash);
        const std::string quals = slash == std::string::npos ? "" : step.substr(slash + 1);
        out.push_back(QualifiedStep{act(src, actions), fset(src, quals)});
    }
    return out;
}

// SplitMix64: deterministic across platforms and runs.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed + 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
    bool chance(std::size_t num, std::size_t den) { return below(den) < num; }

private:
    std::uint64_t state_;
};

}  // namespace acir::test
