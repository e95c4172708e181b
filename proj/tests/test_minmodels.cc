#include <doctest.h>

#include <random>

#include "support.hh"
#include "tvu/minmodels.hh"

using namespace tvu;
using namespace tvu::minmodels;
using namespace tvu::testsupport;

TEST_SUITE_BEGIN("minmodels");

static Valuation val(std::initializer_list<int> bits, int n) {
    Valuation v(static_cast<size_t>(n), false);
    for (int b : bits) v[static_cast<size_t>(b) - 1] = true;
    return v;
}

TEST_CASE("solve basics") {
    Cnf unsat;
    unsat.num_vars = 1;
    unsat.add_clause({1});
    unsat.add_clause({-1});
    CHECK(!solve(unsat).has_value());

    Cnf f;
    f.num_vars = 2;
    f.add_clause({1, 2});
    auto m = solve(f);
    REQUIRE(m.has_value());
    CHECK(evaluates(f, *m));
}

TEST_CASE("solve agrees with the truth table on random formulas") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        Cnf f = random_cnf(rng, 12, 20);
        auto m = solve(f);
        CHECK(m.has_value() == tt_satisfiable(f));
        if (m) CHECK(evaluates(f, *m));
    }
}

TEST_CASE("minimize_model") {
    Cnf f;
    f.num_vars = 2;
    f.add_clause({1, 2});
    Valuation both = val({1, 2}, 2);
    Valuation m = minimize_model(f, both);
    CHECK((m == val({1}, 2) || m == val({2}, 2)));

    // Already minimal stays put.
    CHECK(minimize_model(f, val({1}, 2)) == val({1}, 2));

    Cnf chain;
    chain.num_vars = 2;
    chain.add_clause({1});
    chain.add_clause({1, 2});
    CHECK(minimize_model(chain, val({1, 2}, 2)) == val({1}, 2));
}

TEST_CASE("enumerate_minimal_models") {
    Cnf unsat;
    unsat.num_vars = 1;
    unsat.add_clause({1});
    unsat.add_clause({-1});
    CHECK(enumerate_minimal_models(unsat).empty());

    Cnf f;
    f.num_vars = 3;
    f.add_clause({1, 2});
    f.add_clause({2, 3});
    auto mins = enumerate_minimal_models(f);
    REQUIRE(mins.size() == 2);
    CHECK(std::find(mins.begin(), mins.end(), val({2}, 3)) != mins.end());
    CHECK(std::find(mins.begin(), mins.end(), val({1, 3}, 3)) != mins.end());
}

TEST_CASE("enumeration matches the truth-table reference") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
        Cnf f = random_cnf(rng, 10, 16);
        auto got = enumerate_minimal_models(f);
        auto want = tt_minimal_models(f);
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        CHECK(got == want);
        for (const Valuation& v : got) CHECK(evaluates(f, v));
        // Antichain under <=.
        for (const Valuation& x : got)
            for (const Valuation& y : got) {
                if (x == y) continue;
                bool le = true;
                for (size_t k = 0; k < x.size(); ++k)
                    if (x[k] && !y[k]) { le = false; break; }
                CHECK(!le);
            }
    }
}

TEST_CASE("filtered enumeration") {
    Cnf f;
    f.num_vars = 3;
    f.add_clause({1, 2});
    f.add_clause({2, 3});
    auto all = enumerate_minimal_models(f);
    CHECK(minimal_models_filtered(f, {}) == all);
    CHECK(minimal_models_filtered(f, all).empty());

    // Blocking one minimal model leaves exactly the other.
    auto rest = minimal_models_filtered(f, {val({2}, 3)});
    REQUIRE(rest.size() == 1);
    CHECK(rest[0] == val({1, 3}, 3));
}

TEST_CASE("pred_formula") {
    // Empty target: trivially satisfiable by the empty valuation.
    auto empty = pred_formula<int>({});
    CHECK(empty.cnf.num_vars == 0);
    auto models = enumerate_minimal_models(empty.cnf);
    REQUIRE(models.size() == 1);
    CHECK(models[0].empty());

    // One target with two predecessors: minimal models are the singletons.
    auto f = pred_formula<int>({{7, {1, 2}}});
    auto mins = enumerate_minimal_models(f.cnf);
    CHECK(mins.size() == 2);

    // Two targets sharing one predecessor: the shared one is the unique
    // minimal model iff it covers both clauses.
    auto g = pred_formula<int>({{7, {1, 2}}, {8, {1}}});
    auto gm = enumerate_minimal_models(g.cnf);
    REQUIRE(gm.size() == 1);
    CHECK(g.items_of(gm[0]) == std::vector<int>{1});

    // Unsatisfiable: a target with no predecessor.
    auto h = pred_formula<int>({{7, {}}});
    CHECK(enumerate_minimal_models(h.cnf).empty());
}

TEST_CASE("dimacs dump") {
    Cnf f;
    f.num_vars = 2;
    f.add_clause({1, -2});
    CHECK(to_dimacs(f) == "p cnf 2 1\n1 -2 0\n");
}

TEST_SUITE_END();
