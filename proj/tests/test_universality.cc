#include <doctest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "support.hh"
#include "tvu/macro_universality.hh"
#include "tvu/oracle.hh"

using namespace tvu;
using namespace tvu::testsupport;

TEST_SUITE_BEGIN("universality");

namespace {

HedgeAutomaton universal_one_state(const std::vector<std::string>& letters) {
    std::vector<HedgeRule> rules;
    for (Letter l = 0; l < letters.size(); ++l)
        rules.push_back({l, 0, compile_horizontal("q*", {"q"})});
    return HedgeAutomaton(Alphabet(letters), {"q"}, {0}, std::move(rules));
}

// Tiny space with one rule whose NFA is a 3-state chain; handy for the
// low-level relation laws.
struct TinySpace {
    HedgeAutomaton h;
    HorizontalSpace space;

    TinySpace()
        : h(Alphabet({"a"}), {"q"}, {0},
            [] {
                std::vector<HedgeRule> rules;
                rules.push_back({0, 0, compile_horizontal("q q", {"q"})});
                return rules;
            }()),
          space(h) {}
};

}  // namespace

TEST_CASE("relation composition laws") {
    TinySpace ts;
    const HorizontalSpace& sp = ts.space;
    REQUIRE(sp.num_bodies() == 1);
    REQUIRE(sp.body_states(0) == 3);

    Relation id = sp.identity();
    Relation r = sp.zero();
    sp.set(r, 0, 0, 1);
    Relation s = sp.zero();
    sp.set(s, 0, 1, 2);

    CHECK(sp.compose(id, r) == r);
    CHECK(sp.compose(r, id) == r);

    Relation rs = sp.compose(r, s);
    Relation expected = sp.zero();
    sp.set(expected, 0, 0, 2);
    CHECK(rs == expected);
    CHECK(sp.compose(s, r) == sp.zero());
}

TEST_CASE("rel_of is monotone and empty on the empty macrostate") {
    HedgeAutomaton h = ex_ha();
    HorizontalSpace sp(h);
    CHECK(sp.rel_of(0) == sp.zero());
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<Macrostate> mask(0, 15);
    for (int i = 0; i < 100; ++i) {
        Macrostate p = mask(rng);
        Macrostate q = p | mask(rng);
        CHECK(sp.subset(sp.rel_of(p), sp.rel_of(q)));
    }
}

TEST_CASE("post_a over relations matches the leaf and two-letter cases") {
    HedgeAutomaton h = ex_ha();
    HorizontalSpace sp(h);
    // Post_a(id) is the macrostate of an a-leaf: only L1 accepts eps.
    CHECK(sp.post_a(0, sp.identity()) == 0b0001);
    // rel({qb}) ∘ rel({qc}) feeds the word qb·qc to every language:
    // in L1 and L2, not in L3.
    Relation r = sp.compose(sp.rel_of(Macrostate{1} << 1), sp.rel_of(Macrostate{1} << 2));
    CHECK(sp.post_a(0, r) == 0b1001);  // {qa, qf}
    CHECK(sp.post_a(0, sp.zero()) == 0);
}

TEST_CASE("composition closure on degenerate inputs") {
    TinySpace ts;
    const HorizontalSpace& sp = ts.space;
    RelationMonoid base;
    base.add(sp.identity(), {});

    RelationMonoid same = composition_closure(sp, base, {});
    CHECK(same.size() == 1);

    // Idempotent relation: total relation on the body.
    Relation total = sp.zero();
    for (uint32_t i = 0; i < 3; ++i)
        for (uint32_t j = 0; j < 3; ++j) sp.set(total, 0, i, j);
    RelationMonoid m1 = composition_closure(sp, base, {{total, {1}}});
    CHECK(m1.size() == 2);

    // Nilpotent chain: r = {(0,1)}, r∘r = ∅.
    Relation r = sp.zero();
    sp.set(r, 0, 0, 1);
    RelationMonoid m2 = composition_closure(sp, base, {{r, {1}}});
    CHECK(m2.size() == 3);
    CHECK(m2.contains(sp.zero()));
}

TEST_CASE("worked example is not universal with the a-leaf witness") {
    HedgeAutomaton h = ex_ha();
    UniversalityResult plain = universality_plain(h);
    UniversalityResult anti = universality_antichain(h);
    CHECK(!plain.universal);
    CHECK(!anti.universal);
    CHECK(plain.witness_macrostate == 0b0001);
    REQUIRE(plain.witness.has_value());
    CHECK(*plain.witness == tr(0));
    REQUIRE(anti.witness.has_value());
    CHECK(!h.accepts(*anti.witness));
}

TEST_CASE("universal automaton and missing-letter automaton") {
    CHECK(universality_plain(universal_one_state({"a"})).universal);
    CHECK(universality_antichain(universal_one_state({"a", "b"})).universal);

    // No rule at all for letter b: Post_b(eps) is empty.
    HedgeAutomaton missing(Alphabet({"a", "b"}), {"q"}, {0},
                           [] {
                               std::vector<HedgeRule> rules;
                               rules.push_back({0, 0, compile_horizontal("q*", {"q"})});
                               return rules;
                           }());
    UniversalityResult res = universality_plain(missing);
    CHECK(!res.universal);
    CHECK(res.witness_macrostate == 0);
    REQUIRE(res.witness.has_value());
    CHECK(*res.witness == tr(1));  // b-leaf
}

TEST_CASE("fixpoint properties on the worked example") {
    HedgeAutomaton h = ex_ha();
    HorizontalSpace sp(h);
    FixpointResult fx = macro_fixpoint(h, sp, false, false);

    // Pi contains the first-round macrostates and Post(a, {qb}{qc}).
    auto has = [&](Macrostate p) {
        return std::find(fx.pi.begin(), fx.pi.end(), p) != fx.pi.end();
    };
    CHECK(has(0b0001));
    CHECK(has(0b0010));
    CHECK(has(0b0100));
    CHECK(has(0b1001));

    // Lemma 8 as a test: the macrostate of every small tree is in Pi.
    for (const Tree& t : enumerate_trees(h.alphabet(), 5)) CHECK(has(h.macrostate_of(t)));

    // Monoid closure, exhaustively.
    for (const Relation& x : fx.rels.elems)
        for (const Relation& y : fx.rels.elems) CHECK(fx.rels.contains(sp.compose(x, y)));

    // rel homomorphism (Lemma 10): rel of a word equals the fold.
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<size_t> pick(0, fx.pi.size() - 1);
    std::uniform_int_distribution<int> len(0, 3);
    for (int i = 0; i < 50; ++i) {
        std::vector<Macrostate> word;
        int n = len(rng);
        for (int j = 0; j < n; ++j) word.push_back(fx.pi[pick(rng)]);
        Relation fold = sp.identity();
        for (Macrostate p : word) fold = sp.compose(fold, sp.rel_of(p));
        // Brute-force rel(pi): paths labeled by members of words(pi).
        Relation brute = sp.zero();
        std::function<void(size_t, uint32_t, uint32_t, size_t)> walk =
            [&](size_t body, uint32_t from, uint32_t at, size_t k) {
                if (k == word.size()) {
                    sp.set(brute, body, from, at);
                    return;
                }
                const HedgeRule& rule = h.rules()[body];
                for (const HTransition& t : rule.lang.transitions)
                    if (t.src == at && ((word[k] >> t.via) & 1)) walk(body, from, t.dst, k + 1);
            };
        for (size_t body = 0; body < sp.num_bodies(); ++body)
            for (uint32_t s = 0; s < sp.body_states(body); ++s) walk(body, s, s, 0);
        CHECK(fold == brute);
    }
}

TEST_CASE("antichain dominance (Lemma 14)") {
    HedgeAutomaton h = ex_ha();
    HorizontalSpace sp(h);
    FixpointResult full = macro_fixpoint(h, sp, false, false);
    FixpointResult mins = macro_fixpoint(h, sp, true, false);
    for (Macrostate p : full.pi) {
        bool dominated = false;
        for (Macrostate q : mins.pi)
            if ((q & ~p) == 0) { dominated = true; break; }
        CHECK(dominated);
    }
}

TEST_CASE("plain, antichain and the bounded oracle agree on random automata") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 200; ++i) {
        HedgeAutomaton h = random_hedge_automaton(rng, 3, 2);
        UniversalityResult plain = universality_plain(h);
        UniversalityResult anti = universality_antichain(h);
        REQUIRE(plain.universal == anti.universal);
        auto bounded = oracle::bounded_nonuniversality_witness(h, 5);
        if (plain.universal) {
            CHECK(!bounded.has_value());
        } else {
            REQUIRE(plain.witness.has_value());
            CHECK(!h.accepts(*plain.witness));
            REQUIRE(anti.witness.has_value());
            CHECK(!h.accepts(*anti.witness));
        }
    }
}

TEST_SUITE_END();
