// support.hh -- shared fixtures: the running example automata, naive
// oracles, and random generators used by both the unit and acceptance
// suites. Oracles here are deliberately independent of the library
// algorithms they check.

#pragma once

#include <functional>
#include <random>

#include "tvu/files.hh"
#include "tvu/hedge_automaton.hh"
#include "tvu/minmodels.hh"
#include "tvu/safe_configs.hh"
#include "tvu/vpa.hh"

namespace tvu::testsupport {

inline Tree tr(Letter l, std::vector<Tree> kids = {}) { return Tree{l, std::move(kids)}; }

// Hedge automaton over {a,b,c} accepting trees that contain an a-node
// whose children are exactly a b-rooted tree followed by a c-rooted one.
inline HedgeAutomaton ex_ha() {
    return parse_hedge_text(R"(kind: hedge
alphabet: a b c
states: qa qb qc qf
final: qf
rule a qa (qa|qb|qc|qf)*
rule b qb (qa|qb|qc|qf)*
rule c qc (qa|qb|qc|qf)*
rule a qf qb qc
rule a qf (qa|qb|qc|qf)* qf (qa|qb|qc|qf)*
rule b qf (qa|qb|qc|qf)* qf (qa|qb|qc|qf)*
rule c qf (qa|qb|qc|qf)* qf (qa|qb|qc|qf)*
)");
}

// One-state VPA accepting every tree over {a}.
inline Vpa ex_vpa1() {
    return parse_vpa_text(R"(kind: vpa
alphabet: a
states: q
initial: q
final: q
stack: g
call q a g q
ret q a g q
)");
}

// VPA over {a,b} accepting exactly the trees whose root is labeled a.
inline Vpa ex_vpa2() {
    return parse_vpa_text(R"(kind: vpa
alphabet: a b
states: q0 p qf
initial: q0
final: qf
stack: A C
call q0 a A p
call q0 b A p
call p a C p
call p b C p
ret p a C p
ret p b C p
ret p a A qf
)");
}

// Nondeterministic VPA with the same language as ex_ha(): guess the path
// to the pattern node, skim everything else.
inline Vpa pattern_vpa() {
    return parse_vpa_text(R"(kind: vpa
alphabet: a b c
states: W S P1 P2 P3 F
initial: W
final: F
stack: SK DS PAT G B C

# wander towards the pattern node; siblings before it are skimmed
call W a SK S
call W b SK S
call W c SK S
ret  S a SK W
ret  S b SK W
ret  S c SK W
call W a DS W
call W b DS W
call W c DS W
ret  F a DS F
ret  F b DS F
ret  F c DS F

# skim an arbitrary subtree
call S a G S
call S b G S
call S c G S
ret  S a G S
ret  S b G S
ret  S c G S

# the pattern node itself: a(b..., c...) with exactly two children
call W a PAT P1
call P1 b B S
ret  S b B P2
call P2 c C S
ret  S c C P3
ret  P3 a PAT F

# after the pattern everything is skimmed
call F a G F
call F b G F
call F c G F
ret  F a G F
ret  F b G F
ret  F c G F
)");
}

// Trees of the worked examples, over the alphabet of ex_ha().
inline Tree t1_tree() {
    return tr(2, {tr(0), tr(0), tr(0), tr(0), tr(1, {tr(1), tr(1)})});
}

inline Tree t2_tree() {
    return tr(0, {tr(0, {tr(1), tr(2, {tr(1), tr(2)})}), tr(1),
                  tr(0, {tr(0), tr(1), tr(2), tr(0)})});
}

// --- naive oracles ------------------------------------------------------

// Membership by enumerating every state labeling of the tree.
inline bool naive_run_accepts(const HedgeAutomaton& h, const Tree& t) {
    struct Node {
        Letter letter;
        std::vector<size_t> children;
    };
    std::vector<Node> nodes;
    std::function<size_t(const Tree&)> flatten = [&](const Tree& u) {
        size_t id = nodes.size();
        nodes.push_back({u.label, {}});
        for (const Tree& c : u.children) {
            size_t cid = flatten(c);
            nodes[id].children.push_back(cid);
        }
        return id;
    };
    flatten(t);

    std::vector<HState> label(nodes.size(), 0);
    std::function<bool(size_t)> assign = [&](size_t i) -> bool {
        if (i == nodes.size()) {
            for (size_t n = 0; n < nodes.size(); ++n) {
                std::vector<HState> word;
                for (size_t c : nodes[n].children) word.push_back(label[c]);
                bool ok = false;
                for (const HedgeRule& r : h.rules()) {
                    if (r.letter != nodes[n].letter || r.target != label[n]) continue;
                    if (r.lang.member(word)) { ok = true; break; }
                }
                if (!ok) return false;
            }
            return (h.final_mask() >> label[0]) & 1;
        }
        for (HState q = 0; q < h.num_states(); ++q) {
            label[i] = q;
            if (assign(i + 1)) return true;
        }
        return false;
    };
    return assign(0);
}

// Independent tree counter: trees with exactly n nodes over k letters.
inline unsigned long long count_trees_upto(unsigned k, unsigned n) {
    std::vector<unsigned long long> H(n + 1, 0), T(n + 1, 0);
    H[0] = 1;
    for (unsigned m = 1; m <= n; ++m) {
        T[m] = k * H[m - 1];
        for (unsigned j = 1; j <= m; ++j) H[m] += T[j] * H[m - j];
    }
    unsigned long long total = 0;
    for (unsigned m = 1; m <= n; ++m) total += T[m];
    return total;
}

// Exhaustive truth-table reference for the SAT engine.
inline bool tt_satisfiable(const minmodels::Cnf& f) {
    for (uint64_t m = 0; m < (uint64_t{1} << f.num_vars); ++m) {
        minmodels::Valuation v(static_cast<size_t>(f.num_vars));
        for (int i = 0; i < f.num_vars; ++i) v[static_cast<size_t>(i)] = (m >> i) & 1;
        if (minmodels::evaluates(f, v)) return true;
    }
    return f.num_vars == 0 && f.clauses.empty();
}

inline std::vector<minmodels::Valuation> tt_minimal_models(const minmodels::Cnf& f) {
    std::vector<minmodels::Valuation> models;
    for (uint64_t m = 0; m < (uint64_t{1} << f.num_vars); ++m) {
        minmodels::Valuation v(static_cast<size_t>(f.num_vars));
        for (int i = 0; i < f.num_vars; ++i) v[static_cast<size_t>(i)] = (m >> i) & 1;
        if (minmodels::evaluates(f, v)) models.push_back(std::move(v));
    }
    auto le = [](const minmodels::Valuation& x, const minmodels::Valuation& y) {
        for (size_t i = 0; i < x.size(); ++i)
            if (x[i] && !y[i]) return false;
        return true;
    };
    std::vector<minmodels::Valuation> mins;
    for (const auto& v : models) {
        bool minimal = true;
        for (const auto& w : models)
            if (w != v && le(w, v)) { minimal = false; break; }
        if (minimal) mins.push_back(v);
    }
    return mins;
}

inline minmodels::Cnf random_cnf(std::mt19937_64& rng, int max_vars, int max_clauses) {
    std::uniform_int_distribution<int> nv(1, max_vars), nc(0, max_clauses);
    minmodels::Cnf f;
    f.num_vars = nv(rng);
    int clauses = nc(rng);
    std::uniform_int_distribution<int> width(1, 3), var(1, f.num_vars), sign(0, 1);
    for (int c = 0; c < clauses; ++c) {
        std::vector<int> lits;
        int w = width(rng);
        for (int i = 0; i < w; ++i) lits.push_back(var(rng) * (sign(rng) ? 1 : -1));
        f.add_clause(std::move(lits));
    }
    return f;
}

inline std::string random_regex(std::mt19937_64& rng, const std::vector<std::string>& states,
                                int depth) {
    std::uniform_int_distribution<int> shape(0, depth > 0 ? 4 : 0);
    std::uniform_int_distribution<size_t> st(0, states.size());  // states.size() = eps
    switch (shape(rng)) {
        case 0: {
            size_t i = st(rng);
            return i == states.size() ? "eps" : states[i];
        }
        case 1:
            return "(" + random_regex(rng, states, depth - 1) + "|" +
                   random_regex(rng, states, depth - 1) + ")";
        case 2:
            return random_regex(rng, states, depth - 1) + " " +
                   random_regex(rng, states, depth - 1);
        case 3: return "(" + random_regex(rng, states, depth - 1) + ")*";
        default: return "(" + random_regex(rng, states, depth - 1) + ")?";
    }
}

inline HedgeAutomaton random_hedge_automaton(std::mt19937_64& rng, int max_states,
                                             int max_letters) {
    std::uniform_int_distribution<int> nq(1, max_states), nl(1, max_letters), coin(0, 1);
    int q = nq(rng), l = nl(rng);
    std::vector<std::string> states, letters;
    for (int i = 0; i < q; ++i) states.push_back("s" + std::to_string(i));
    for (int i = 0; i < l; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
    std::vector<HState> final;
    for (int i = 0; i < q; ++i)
        if (coin(rng)) final.push_back(static_cast<HState>(i));
    std::vector<HedgeRule> rules;
    for (Letter a = 0; a < static_cast<Letter>(l); ++a)
        for (HState tgt = 0; tgt < static_cast<HState>(q); ++tgt)
            if (coin(rng))
                rules.push_back({a, tgt, compile_horizontal(random_regex(rng, states, 2), states)});
    return HedgeAutomaton(Alphabet(letters), states, final, std::move(rules));
}

// Random families of small config sets (for the roundcup laws).
inline ConfigFamily random_family(std::mt19937_64& rng, int max_sets, int max_size,
                                  int universe) {
    std::uniform_int_distribution<int> ns(1, max_sets), sz(1, max_size),
        el(0, universe - 1);
    ConfigFamily fam;
    int n = ns(rng);
    for (int i = 0; i < n; ++i) {
        ConfigSet s;
        int m = sz(rng);
        for (int j = 0; j < m; ++j)
            s.push_back({static_cast<VState>(el(rng)), static_cast<uint32_t>(el(rng))});
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        fam.push_back(std::move(s));
    }
    canonicalize_family(fam);
    return fam;
}

}  // namespace tvu::testsupport
