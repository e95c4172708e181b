// minmodels.hh -- CNF formulas, a small backtracking SAT engine, and
// enumeration of all minimal models via strengthening and blocking clauses

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tvu::minmodels {

/// Literals are +v / -v with v in [1..num_vars], DIMACS style.
struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;

    void add_clause(std::vector<int> lits) { clauses.push_back(std::move(lits)); }
};

/// Total assignment, indexed by variable-1.
using Valuation = std::vector<bool>;

/// Backtracking search with unit propagation. Branching is pinned to
/// lowest-index-first, positive-first, so results are deterministic.
std::optional<Valuation> solve(const Cnf& f);

/// A minimal model below v (v must satisfy f).
Valuation minimize_model(const Cnf& f, Valuation v);

/// All models minimal in the pointwise 0<=1 order.
std::vector<Valuation> enumerate_minimal_models(const Cnf& f);

/// Minimal models of f with the upward cones of `known` blocked: no
/// returned model is a superset of (or equal to) a known one.
std::vector<Valuation> minimal_models_filtered(const Cnf& f, const std::vector<Valuation>& known);

bool evaluates(const Cnf& f, const Valuation& v);

/// Debug rendering, variables numbered from 1, clauses 0-terminated.
std::string to_dimacs(const Cnf& f);

/// CNF over typed items: one clause per target requiring one of its
/// predecessors; the variable table maps indices back to items. An empty
/// predecessor list yields an empty (unsatisfiable) clause.
template <typename T>
struct PredFormula {
    Cnf cnf;
    std::vector<T> vars;  // sorted; vars[i] <-> variable i+1

    std::vector<T> items_of(const Valuation& v) const {
        std::vector<T> out;
        for (size_t i = 0; i < vars.size(); ++i)
            if (v[i]) out.push_back(vars[i]);
        return out;
    }
};

template <typename T>
PredFormula<T> pred_formula(const std::vector<std::pair<T, std::vector<T>>>& targets) {
    PredFormula<T> out;
    std::map<T, int> id;
    for (const auto& [tgt, preds] : targets)
        for (const T& p : preds) id.emplace(p, 0);
    int next = 1;
    for (auto& [item, v] : id) {
        v = next++;
        out.vars.push_back(item);
    }
    out.cnf.num_vars = next - 1;
    for (const auto& [tgt, preds] : targets) {
        std::vector<int> clause;
        clause.reserve(preds.size());
        for (const T& p : preds) clause.push_back(id.at(p));
        std::sort(clause.begin(), clause.end());
        clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
        out.cnf.add_clause(std::move(clause));
    }
    return out;
}

}  // namespace tvu::minmodels
