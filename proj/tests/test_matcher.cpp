#include <doctest.h>

#include <algorithm>
#include <set>

#include "acir/matcher.hpp"
#include "acir/parser.hpp"
#include "helpers.hpp"

using namespace acir;
using namespace acir::test;

namespace {

std::optional<PartialState> eps_of(const Source& src, const Domain& dom) {
    return conservative_expansion(initial_of(src), src.sequence, dom);
}

}  // namespace

TEST_CASE("condition c1 collects the deciding models") {
    const Source s1 = load_fixture("ex1_s1");
    const Domain dom1(s1);
    const auto eps1 = eps_of(s1, dom1);
    REQUIRE(eps1.has_value());

    const auto deciding = check_c1(s1, fid(s1, "m"), {}, qseq(s1, "d/"), *eps1, dom1);
    REQUIRE(deciding.size() == 1);
    CHECK(deciding[0].states ==
          std::vector<StateSet>{st(s1, "-m -ab"), st(s1, "-m -ab")});

    // The no-op story has a model, but it decides nothing.
    const Source s2 = load_fixture("ex1_s2");
    const Domain dom2(s2);
    const auto eps2 = eps_of(s2, dom2);
    REQUIRE(eps2.has_value());
    CHECK(check_c1(s2, fid(s2, "m"), {}, qseq(s2, "r/"), *eps2, dom2).empty());

    // Forcing m brings two deciding models, one per case.
    const auto forced = check_c1(s2, fid(s2, "m"), fset(s2, "m"), qseq(s2, "r/"), *eps2, dom2);
    REQUIRE(forced.size() == 2);
    std::vector<StateSet> finals{forced[0].final(), forced[1].final()};
    std::sort(finals.begin(), finals.end());
    CHECK(finals == std::vector<StateSet>{st(s2, "-m -ab"), st(s2, "m -ab")});
}

TEST_CASE("condition c2 rejects decisions owed to the assumptions alone") {
    const Source s1 = load_fixture("ex1_s1");
    const Domain dom1(s1);
    const auto eps1 = eps_of(s1, dom1);
    const auto deciding = check_c1(s1, fid(s1, "m"), {}, qseq(s1, "d/"), *eps1, dom1);
    REQUIRE(deciding.size() == 1);
    CHECK(check_c2(s1, fid(s1, "m"), deciding[0], *eps1, dom1));

    // Forced case splits on the no-op story only echo themselves back.
    const Source s2 = load_fixture("ex1_s2");
    const Domain dom2(s2);
    const auto eps2 = eps_of(s2, dom2);
    for (const Path& pi :
         check_c1(s2, fid(s2, "m"), fset(s2, "m"), qseq(s2, "r/"), *eps2, dom2)) {
        CHECK_FALSE(check_c2(s2, fid(s2, "m"), pi, *eps2, dom2));
    }

    // The filing outcome is real evidence: both branches pass c2.
    const Source s4 = load_fixture("ex4");
    const Domain dom4(s4);
    const auto eps4 = eps_of(s4, dom4);
    REQUIRE(eps4.has_value());
    const auto branches =
        check_c1(s4, fid(s4, "m"), {}, qseq(s4, "d/; w/; fd/m"), *eps4, dom4);
    REQUIRE(branches.size() == 2);
    for (const Path& pi : branches) CHECK(check_c2(s4, fid(s4, "m"), pi, *eps4, dom4));
}

TEST_CASE("budget zero yields exactly the bare extension") {
    const Source src = load_fixture("ex4");
    const Domain dom(src);
    CandidateIterator it(src, dom, 0);
    FluentSet f;
    QualifiedActionSequence s;
    REQUIRE(it.next(f, s));
    CHECK(f.empty());
    CHECK(s == with_empty_qualifiers(src.sequence));
    CHECK_FALSE(it.next(f, s));
}

TEST_CASE("budget one includes the split on the filing step") {
    const Source src = load_fixture("ex4");
    const Domain dom(src);
    CandidateIterator it(src, dom, 1);
    FluentSet f;
    QualifiedActionSequence s;
    bool found = false;
    while (it.next(f, s)) {
        if (f.empty() && s == qseq(src, "d/; w/; fd/m")) found = true;
    }
    CHECK(found);
}

TEST_CASE("candidates never repeat and exhaust the space") {
    const Source src = load_fixture("ex4");
    const Domain dom(src);
    const std::uint32_t top = CandidateIterator::max_budget(src, dom);
    CHECK(top == 3);  // two fluents plus one u-capable step

    std::set<std::pair<FluentSet, QualifiedActionSequence>> seen;
    for (std::uint32_t budget = 0; budget <= top; ++budget) {
        CandidateIterator it(src, dom, budget);
        FluentSet f;
        QualifiedActionSequence s;
        while (it.next(f, s)) {
            CHECK(f.size() + branching_degree(s) == budget);
            CHECK(seen.emplace(f, s).second);
        }
    }
    // 4 F-subsets x 2 qualifier choices on the one u-capable step.
    CHECK(seen.size() == 8);

    CandidateIterator beyond(src, dom, top + 1);
    FluentSet f;
    QualifiedActionSequence s;
    CHECK_FALSE(beyond.next(f, s));
}

TEST_CASE("find_match reproduces the worked examples") {
    CHECK(score(load_fixture("ex1_s1"), Query{"m"}) == Score::finite(0));
    CHECK(score(load_fixture("ex1_s2"), Query{"m"}) == Score::infinity());
    CHECK(score(load_fixture("ex2"), Query{"m"}) == Score::infinity());
    CHECK(score(load_fixture("ex3"), Query{"m"}) == Score::finite(0));
    CHECK(score(load_fixture("ex4"), Query{"m"}) == Score::finite(1));
}

TEST_CASE("the ex4 witness is the qualified filing step") {
    const MatchResult r = find_match(load_fixture("ex4"), Query{"m"});
    REQUIRE(r.matched);
    CHECK(r.score == Score::finite(1));
    CHECK(r.witness_forced.empty());
    const Source src = load_fixture("ex4");
    CHECK(r.witness_sequence == qseq(src, "d/; w/; fd/m"));
    REQUIRE(r.witness_path.has_value());
    CHECK(entails_pm(*r.witness_path, fid(src, "m")));
}

TEST_CASE("witnesses replay through c1 and c2") {
    for (const char* name : {"ex1_s1", "ex3", "ex4"}) {
        const Source src = load_fixture(name);
        const Domain dom(src);
        const MatchResult r = find_match(src, Query{"m"});
        REQUIRE(r.matched);
        const auto eps = eps_of(src, dom);
        REQUIRE(eps.has_value());
        const auto paths =
            check_c1(src, fid(src, "m"), r.witness_forced, r.witness_sequence, *eps, dom);
        CHECK(std::find(paths.begin(), paths.end(), *r.witness_path) != paths.end());
        CHECK(check_c2(src, fid(src, "m"), *r.witness_path, *eps, dom));
        CHECK(r.score.value == r.witness_forced.size() + branching_degree(r.witness_sequence));
    }
}

TEST_CASE("a budget cap yields an explicit lower-bound verdict") {
    MatchOptions opts;
    opts.max_budget = 0;
    const MatchResult r = find_match(load_fixture("ex4"), Query{"m"}, opts);
    CHECK_FALSE(r.matched);
    CHECK(r.score == Score::infinity());
    CHECK(r.diagnostics.budget_capped);
}

TEST_CASE("a missing conservative expansion scores infinity") {
    const Source stuck = parse_source(
        "fluents: p. actions: a. law: impossible a if p. law: impossible a if -p."
        " initial: . sequence: a.");
    const MatchResult r = find_match(stuck, Query{"p"});
    CHECK_FALSE(r.matched);
    CHECK(r.diagnostics.expansion_missing);
    CHECK_FALSE(r.diagnostics.budget_capped);
}

TEST_CASE("queries outside the signature are rejected") {
    CHECK_THROWS_AS(find_match(load_fixture("ex1_s1"), Query{"zz"}), QueryNotInSignatureError);
}

TEST_CASE("emergent non-determinism propagates out of find_match") {
    const Source loopy = parse_source(
        "fluents: p, q, r. actions: a."
        " law: q if -r, p. law: r if -q, p. law: a causes p."
        " initial: . sequence: a.");
    CHECK_THROWS_AS(find_match(loopy, Query{"q"}), EmergentNondeterminismError);
}
