#include <doctest.h>

#include <functional>
#include <random>

#include "support.hh"
#include "tvu/oracle.hh"
#include "tvu/safe_configs.hh"

using namespace tvu;
using namespace tvu::testsupport;

TEST_SUITE_BEGIN("safe-configs");

TEST_CASE("roundcup basics") {
    ConfigFamily a{{{0, 1}}}, b{{{0, 2}}};
    ConfigFamily u = roundcup(a, b);
    REQUIRE(u.size() == 1);
    CHECK(u[0] == ConfigSet{{0, 1}, {0, 2}});

    ConfigFamily with_empty{{}};
    CHECK_THROWS_AS(roundcup(a, with_empty), EmptyMember);
    CHECK_THROWS_AS(roundcup_min(with_empty, b), EmptyMember);
}

TEST_CASE("corollary: subset families collapse") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 100; ++i) {
        ConfigFamily a = random_family(rng, 4, 3, 4);
        ConfigFamily b = a;
        ConfigFamily extra = random_family(rng, 3, 3, 4);
        b.insert(b.end(), extra.begin(), extra.end());
        canonicalize_family(b);
        CHECK(roundcup_min(a, b) == minimize_family(roundcup(a, b)));
        // A ⊆ B: the product minimizes to ⌊A⌋.
        CHECK(roundcup_min(a, b) == minimize_family(a));
    }
}

TEST_CASE("roundcup_min equals the brute-force product and the split law holds") {
    std::mt19937_64 rng(32);
    for (int i = 0; i < 200; ++i) {
        ConfigFamily a = random_family(rng, 5, 4, 5);
        ConfigFamily b = random_family(rng, 5, 4, 5);
        ConfigFamily brute = minimize_family(roundcup(a, b));
        CHECK(roundcup_min(a, b) == brute);

        // Lemma 40: ⌊A ⊔ B⌋ = ⌊(A∩B) ∪ (A\B ⊔ B\A)⌋, on the raw ops.
        ConfigFamily common, only_a, only_b;
        for (const ConfigSet& x : a)
            (std::find(b.begin(), b.end(), x) != b.end() ? common : only_a).push_back(x);
        for (const ConfigSet& y : b)
            if (std::find(a.begin(), a.end(), y) == a.end()) only_b.push_back(y);
        ConfigFamily split = common;
        if (!only_a.empty() && !only_b.empty()) {
            ConfigFamily cross = roundcup(only_a, only_b);
            split.insert(split.end(), cross.begin(), cross.end());
        }
        CHECK(minimize_family(split) == brute);
    }
}

TEST_CASE("safe_init on the worked examples") {
    StackPool pool;
    SafeContext ctx2(ex_vpa2());
    ConfigFamily safe_a = safe_init(ctx2, 0, pool);
    REQUIRE(safe_a.size() == 1);
    REQUIRE(safe_a[0].size() == 1);
    CHECK(ctx2.automaton.state_names()[safe_a[0][0].state] == "p");
    CHECK(pool.symbols(safe_a[0][0].stack) == std::vector<StackSym>{0});  // A

    CHECK(safe_init(ctx2, 1, pool).empty());  // never b-universal

    StackPool pool1;
    SafeContext ctx1(ex_vpa1());
    ConfigFamily safe1 = safe_init(ctx1, 0, pool1);
    REQUIRE(safe1.size() == 1);
    CHECK(safe1[0] == ConfigSet{{0, pool1.push(0, StackPool::empty)}});
}

TEST_CASE("step1 and step2 on the root-a example") {
    StackPool pool;
    SafeContext ctx(ex_vpa2());
    ConfigFamily safe_a = safe_init(ctx, 0, pool);
    ConfigFamily lsafe_aa = step1_lsafe(ctx, safe_a, 0, pool);
    REQUIRE(lsafe_aa.size() == 1);
    REQUIRE(lsafe_aa[0].size() == 1);
    CHECK(ctx.automaton.state_names()[lsafe_aa[0][0].state] == "p");
    CHECK(pool.symbols(lsafe_aa[0][0].stack) == std::vector<StackSym>{1, 0});  // C·A

    ConfigFamily safe_aa = step2_safe(ctx, lsafe_aa);
    CHECK(safe_aa == lsafe_aa);

    // Every output is an ā-predecessor of its source and no proper
    // subset is (Lemma 43 restated); here the check is direct.
    const Vpa& a = ctx.automaton;
    for (const ConfigSet& c : lsafe_aa)
        for (const Config& target : safe_a[0]) {
            bool covered = false;
            for (const Config& cf : c) {
                StackSym g = pool.top(cf.stack);
                for (const VpaRule& r : a.rets_from(cf.state, 0, g))
                    if (r.dst == target.state && pool.pop(cf.stack) == target.stack)
                        covered = true;
            }
            CHECK(covered);
        }

    CHECK(step2_safe(ctx, {}).empty());
}

TEST_CASE("step2 with the identity hedge keeps a leaf-safe core") {
    // ex_vpa1 has ⌊H⌋ = {id}; every safe set contains its leaf-safe source.
    StackPool pool;
    SafeContext ctx(ex_vpa1());
    REQUIRE(ctx.hmin.id_index.has_value());
    ConfigFamily safe_a = safe_init(ctx, 0, pool);
    ConfigFamily lsafe = step1_lsafe(ctx, safe_a, 0, pool);
    ConfigFamily safe = step2_safe(ctx, lsafe);
    for (const ConfigSet& c : safe) {
        bool contains_source = false;
        for (const ConfigSet& src : lsafe)
            if (config_subset(src, c)) contains_source = true;
        CHECK(contains_source);
    }
}

TEST_CASE("step2_grow agrees with step2 when the empty hedge is minimal") {
    SafeContext ctx2(ex_vpa2());
    CHECK(!ctx2.hmin.id_index.has_value());
    StackPool p2;
    CHECK_THROWS_AS(step2_safe_grow(ctx2, step1_lsafe(ctx2, safe_init(ctx2, 0, p2), 0, p2), p2),
                    Error);

    int compared = 0;
    for (uint64_t seed = 1; compared < 25 && seed <= 400; ++seed) {
        Vpa a = random_vpa(seed, 3, 2, 2);
        SafeContext ctx(a);
        if (!ctx.hmin.id_index) continue;
        StackPool pool;
        for (Letter l = 0; l < a.alphabet().size(); ++l) {
            ConfigFamily safe = safe_init(ctx, l, pool);
            for (Letter l2 = 0; l2 < a.alphabet().size(); ++l2) {
                ConfigFamily lsafe = step1_lsafe(ctx, safe, l2, pool);
                CHECK(step2_safe(ctx, lsafe) == step2_safe_grow(ctx, lsafe, pool));
            }
        }
        ++compared;
    }
    CHECK(compared == 25);
}

TEST_CASE("stream check on the worked examples") {
    Vpa v2 = ex_vpa2();
    Alphabet al = v2.alphabet();
    StreamResult r = stream_check_safe(v2, parse_stream_text("a a /a /a", al));
    REQUIRE(r.earliest_univ.has_value());
    CHECK(*r.earliest_univ == 1);
    CHECK(r.outcome == StreamOutcome::Accepted);

    StreamResult rb = stream_check_safe(v2, parse_stream_text("b a /a b /b /b", al));
    CHECK(!rb.earliest_univ.has_value());
    CHECK(rb.outcome == StreamOutcome::Rejected);

    Vpa v1 = ex_vpa1();
    StreamResult r1 = stream_check_safe(v1, parse_stream_text("a a /a", v1.alphabet()));
    REQUIRE(r1.earliest_univ.has_value());
    CHECK(*r1.earliest_univ == 1);
    CHECK(r1.outcome == StreamOutcome::Undetermined);
}

TEST_CASE("upward closure of safety (Lemma 16) via bounded refutation") {
    Vpa v = pattern_vpa();
    SafeContext ctx(v);
    Alphabet al = v.alphabet();
    std::vector<Event> prefix = parse_stream_text("a a b /b c /c", al);

    SafeStream st(ctx);
    for (const Event& e : prefix) st.feed(e);
    const ConfigFamily& fam = st.top_family();
    std::mt19937_64 rng(41);
    for (const ConfigSet& c : fam) {
        // Random same-depth superset.
        ConfigSet plus = c;
        std::uniform_int_distribution<VState> q(0, static_cast<VState>(v.num_states() - 1));
        plus.push_back({q(rng), c[0].stack});
        std::sort(plus.begin(), plus.end());
        plus.erase(std::unique(plus.begin(), plus.end()), plus.end());

        auto open = open_of_prefix(prefix);
        auto refute = [&](const ConfigSet& from) {
            return oracle::bounded_uuniv_refutation_from(v, from, open, 4, st.pool());
        };
        bool c_ok = !refute(c).has_value();
        bool plus_ok = !refute(plus).has_value();
        CHECK(c_ok);
        CHECK(!(c_ok && !plus_ok));
    }
}

TEST_CASE("leaf-safety matches safety of the post (Proposition 21)") {
    Vpa v = pattern_vpa();
    SafeContext ctx(v);
    Letter a = 0;

    // u = a b /b has Safe(u) = Safe(a) by the hedge-invariance lemma, so
    // one pool suffices for every set in play.
    StackPool pool;
    ConfigFamily safe_u = safe_init(ctx, a, pool);
    ConfigFamily lsafe_ua = step1_lsafe(ctx, safe_u, a, pool);

    // Sample sets at depth |open(ua)| and compare the two membership routes.
    std::mt19937_64 rng(43);
    std::uniform_int_distribution<VState> q(0, static_cast<VState>(v.num_states() - 1));
    std::uniform_int_distribution<StackSym> g(0, static_cast<StackSym>(v.num_stack_syms() - 1));
    uint32_t base = pool.push(0 /*SK*/, StackPool::empty);
    for (int i = 0; i < 100; ++i) {
        ConfigSet c;
        int n = 1 + static_cast<int>(rng() % 4);
        for (int j = 0; j < n; ++j) c.push_back({q(rng), pool.push(g(rng), base)});
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());

        bool left = false;
        for (const ConfigSet& x : lsafe_ua)
            if (config_subset(x, c)) { left = true; break; }
        ConfigSet post = post_event(v, c, {Kind::Close, a}, pool);
        bool right = false;
        for (const ConfigSet& y : safe_u)
            if (config_subset(y, post)) { right = true; break; }
        CHECK(left == right);
    }
}

TEST_SUITE_END();
