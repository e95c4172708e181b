#include "tvu/minmodels.hh"

#include <cassert>
#include <sstream>

namespace tvu::minmodels {

namespace {

enum : int8_t { kUnset = 0, kFalse = -1, kTrue = 1 };

struct Search {
    const std::vector<std::vector<int>>& clauses;
    std::vector<int8_t> val;  // per variable, 1-based

    explicit Search(const Cnf& f) : clauses(f.clauses), val(f.num_vars + 1, kUnset) {}

    int8_t lit_value(int lit) const {
        int8_t v = val[std::abs(lit)];
        if (v == kUnset) return kUnset;
        return (lit > 0) == (v == kTrue) ? kTrue : kFalse;
    }

    // Unit propagation over the full clause list. Fine at this scale.
    bool propagate(std::vector<int>& trail) {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& cl : clauses) {
                int unassigned = 0, free_lit = 0;
                bool sat = false;
                for (int lit : cl) {
                    int8_t v = lit_value(lit);
                    if (v == kTrue) { sat = true; break; }
                    if (v == kUnset) { ++unassigned; free_lit = lit; }
                }
                if (sat) continue;
                if (unassigned == 0) return false;  // conflict
                if (unassigned == 1) {
                    val[std::abs(free_lit)] = free_lit > 0 ? kTrue : kFalse;
                    trail.push_back(std::abs(free_lit));
                    changed = true;
                }
            }
        }
        return true;
    }

    bool dpll() {
        std::vector<int> trail;
        if (!propagate(trail)) {
            for (int v : trail) val[v] = kUnset;
            return false;
        }
        int branch = 0;
        for (int v = 1; v < static_cast<int>(val.size()); ++v)
            if (val[v] == kUnset) { branch = v; break; }
        if (branch == 0) return true;  // complete assignment
        for (int8_t choice : {kTrue, kFalse}) {
            val[branch] = choice;
            if (dpll()) return true;
            val[branch] = kUnset;
        }
        for (int v : trail) val[v] = kUnset;
        return false;
    }
};

Cnf with_blocking(const Cnf& f, const Valuation& model) {
    Cnf g = f;
    std::vector<int> block;
    for (int v = 1; v <= f.num_vars; ++v)
        if (model[v - 1]) block.push_back(-v);
    g.add_clause(std::move(block));  // empty when the model is all-false: blocks everything above
    return g;
}

}  // namespace

std::optional<Valuation> solve(const Cnf& f) {
    for (const auto& cl : f.clauses)
        if (cl.empty()) return std::nullopt;
    Search s(f);
    if (!s.dpll()) return std::nullopt;
    Valuation v(static_cast<size_t>(f.num_vars), false);
    for (int i = 1; i <= f.num_vars; ++i) v[i - 1] = s.val[i] == kTrue;
    return v;
}

bool evaluates(const Cnf& f, const Valuation& v) {
    for (const auto& cl : f.clauses) {
        bool sat = false;
        for (int lit : cl) {
            bool value = v[static_cast<size_t>(std::abs(lit)) - 1];
            if ((lit > 0) == value) { sat = true; break; }
        }
        if (!sat) return false;
    }
    return true;
}

Valuation minimize_model(const Cnf& f, Valuation v) {
    assert(evaluates(f, v));
    for (;;) {
        // Strengthen: keep the zeros, demand at least one one drops.
        Cnf g = f;
        std::vector<int> drop;
        for (int var = 1; var <= f.num_vars; ++var) {
            if (v[var - 1])
                drop.push_back(-var);
            else
                g.add_clause({-var});
        }
        if (drop.empty()) return v;  // all-false model is minimal
        g.add_clause(std::move(drop));
        auto below = solve(g);
        if (!below) return v;
        v = std::move(*below);
    }
}

std::vector<Valuation> enumerate_minimal_models(const Cnf& f) {
    return minimal_models_filtered(f, {});
}

std::vector<Valuation> minimal_models_filtered(const Cnf& f, const std::vector<Valuation>& known) {
    Cnf work = f;
    for (const Valuation& k : known) work = with_blocking(work, k);
    std::vector<Valuation> out;
    for (;;) {
        auto m = solve(work);
        if (!m) return out;
        // Minimizing against the original formula is sound: descending
        // never un-satisfies a blocking clause (they are all-negative),
        // so the result is a minimal model of the blocked formula too.
        Valuation mm = minimize_model(f, std::move(*m));
        work = with_blocking(work, mm);
        out.push_back(std::move(mm));
    }
}

std::string to_dimacs(const Cnf& f) {
    std::ostringstream os;
    os << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
    for (const auto& cl : f.clauses) {
        for (int lit : cl) os << lit << ' ';
        os << "0\n";
    }
    return os.str();
}

}  // namespace tvu::minmodels
