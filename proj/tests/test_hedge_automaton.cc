#include <doctest.h>

#include <random>

#include "support.hh"
#include "tvu/hedge_automaton.hh"
#include "tvu/relations.hh"

using namespace tvu;
using namespace tvu::testsupport;

TEST_SUITE_BEGIN("hedge-automaton");

static const std::vector<std::string> kStates{"qa", "qb", "qc", "qf"};

TEST_CASE("compile_horizontal basics") {
    HorizontalNfa eps = compile_horizontal("eps", kStates);
    CHECK(eps.accepts_empty);
    CHECK(eps.member(std::vector<HState>{}));
    CHECK(!eps.member(std::vector<HState>{0}));

    HorizontalNfa l2 = compile_horizontal("qb qc", kStates);
    CHECK(!l2.accepts_empty);
    CHECK(l2.member(std::vector<HState>{1, 2}));
    CHECK(!l2.member(std::vector<HState>{1}));
    CHECK(!l2.member(std::vector<HState>{2, 1}));
    CHECK(!l2.member(std::vector<HState>{1, 2, 2}));

    HorizontalNfa l3 = compile_horizontal("(qa|qb|qc|qf)* qf (qa|qb|qc|qf)*", kStates);
    CHECK(!l3.accepts_empty);
    CHECK(l3.member(std::vector<HState>{3}));
    CHECK(l3.member(std::vector<HState>{0, 3, 1}));
    CHECK(!l3.member(std::vector<HState>{0, 1, 2}));

    HorizontalNfa star = compile_horizontal("(qa|qb|qc|qf)*", kStates);
    CHECK(star.accepts_empty);
    CHECK(star.member(std::vector<HState>{0, 0, 0, 1}));

    HorizontalNfa plus = compile_horizontal("qa+ qb?", kStates);
    CHECK(!plus.accepts_empty);
    CHECK(plus.member(std::vector<HState>{0}));
    CHECK(plus.member(std::vector<HState>{0, 0, 1}));
    CHECK(!plus.member(std::vector<HState>{1}));
}

TEST_CASE("compile_horizontal errors") {
    CHECK_THROWS_AS(compile_horizontal("qa |", kStates), ParseError);
    CHECK_THROWS_AS(compile_horizontal("(qa", kStates), ParseError);
    CHECK_THROWS_AS(compile_horizontal("", kStates), ParseError);
    CHECK_THROWS_AS(compile_horizontal("*", kStates), ParseError);
    CHECK_THROWS_AS(compile_horizontal("qz", kStates), UnknownState);
}

TEST_CASE("macrostate_of on the worked example") {
    HedgeAutomaton h = ex_ha();
    CHECK(h.macrostate_of(tr(0)) == 0b0001);            // {qa}
    CHECK(h.macrostate_of(t1_tree()) == 0b0100);        // {qc}
    CHECK((h.macrostate_of(t2_tree()) & 0b1000) != 0);  // contains qf
    CHECK(!h.accepts(t1_tree()));
    CHECK(h.accepts(t2_tree()));
}

static HedgeAutomaton universal_one_state(const std::vector<std::string>& letters) {
    std::vector<HedgeRule> rules;
    for (Letter l = 0; l < letters.size(); ++l)
        rules.push_back({l, 0, compile_horizontal("q*", {"q"})});
    return HedgeAutomaton(Alphabet(letters), {"q"}, {0}, std::move(rules));
}

TEST_CASE("universal automaton accepts everything") {
    HedgeAutomaton u = universal_one_state({"a", "b"});
    for (const Tree& t : enumerate_trees(u.alphabet(), 5)) CHECK(u.accepts(t));
}

TEST_CASE("bottom-up consistency with the relation Post operator") {
    HedgeAutomaton h = ex_ha();
    HorizontalSpace space(h);
    for (const Tree& t : enumerate_trees(h.alphabet(), 5)) {
        Relation r = space.identity();
        for (const Tree& c : t.children)
            r = space.compose(r, space.rel_of(h.macrostate_of(c)));
        CHECK(space.post_a(t.label, r) == h.macrostate_of(t));
    }
}

TEST_CASE("membership agrees with naive run enumeration") {
    HedgeAutomaton h = ex_ha();
    for (const Tree& t : enumerate_trees(h.alphabet(), 4))
        CHECK(h.accepts(t) == naive_run_accepts(h, t));

    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        HedgeAutomaton r = random_hedge_automaton(rng, 3, 2);
        for (const Tree& t : enumerate_trees(r.alphabet(), 5))
            CHECK(r.accepts(t) == naive_run_accepts(r, t));
    }
}

TEST_CASE("duplicate rules are merged by language union") {
    HedgeAutomaton h = parse_hedge_text(R"(kind: hedge
alphabet: a
states: q
final: q
rule a q eps
rule a q q q
)");
    REQUIRE(h.rules().size() == 1);
    CHECK(h.accepts(tr(0)));                          // via eps
    CHECK(h.accepts(tr(0, {tr(0), tr(0)})));          // via q q
    CHECK(!h.accepts(tr(0, {tr(0)})));                // one child matches neither
}

TEST_CASE("file roundtrip preserves the language") {
    HedgeAutomaton h = ex_ha();
    HedgeAutomaton back = parse_hedge_text(hedge_to_text(h));
    for (const Tree& t : enumerate_trees(h.alphabet(), 4))
        CHECK(h.accepts(t) == back.accepts(t));
}

TEST_SUITE_END();
