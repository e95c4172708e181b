#include "tvu/macro_universality.hh"

#include <algorithm>
#include <cassert>
#include <unordered_set>

namespace tvu {

Tree witness_tree(const ProvenanceMap& prov, Macrostate p) {
    auto it = prov.find(p);
    assert(it != prov.end() && "macrostate without provenance");
    Tree t{it->second.letter, {}};
    for (Macrostate c : it->second.children) t.children.push_back(witness_tree(prov, c));
    return t;
}

Hedge witness_hedge(const ProvenanceMap& prov, const std::vector<Macrostate>& word) {
    Hedge h;
    h.reserve(word.size());
    for (Macrostate p : word) h.push_back(witness_tree(prov, p));
    return h;
}

FixpointResult macro_fixpoint(const HedgeAutomaton& h, const HorizontalSpace& space,
                              bool antichain, bool stop_on_counterexample) {
    FixpointResult out;
    const Macrostate qf = h.final_mask();
    const size_t nletters = h.alphabet().size();

    out.rels.add(space.identity(), {});
    std::unordered_set<Macrostate> seen_macro;
    std::unordered_set<Relation, RelationHash> seen_rel;
    seen_rel.insert(out.rels.elems[0]);

    for (;;) {
        // M_new = { Post_a(r) | a in Sigma, r in R* }, letters outermost so
        // the first counterexample (and its witness) is reproducible.
        std::vector<Macrostate> m_new;
        std::unordered_set<Macrostate> m_new_set;
        for (Letter a = 0; a < nletters; ++a) {
            for (uint32_t ri = 0; ri < out.rels.size(); ++ri) {
                Macrostate p = space.post_a(a, out.rels.elems[ri]);
                if (!seen_macro.count(p) && !out.provenance.count(p))
                    out.provenance.emplace(p, MacroProvenance{a, out.rels.witness[ri]});
                if (m_new_set.insert(p).second) m_new.push_back(p);
                if (stop_on_counterexample && (p & qf) == 0) {
                    out.not_universal = true;
                    out.counterexample = p;
                    for (Macrostate q : m_new)
                        if (!seen_macro.count(q)) { seen_macro.insert(q); out.pi.push_back(q); }
                    return out;
                }
            }
        }

        if (antichain) {
            // Keep only the ⊆-minimal new macrostates (Post over minimal
            // relations still yields genuine members of Π).
            std::vector<Macrostate> mins;
            for (Macrostate p : m_new) {
                bool minimal = true;
                for (Macrostate q : m_new)
                    if (q != p && (q & ~p) == 0) { minimal = false; break; }
                if (minimal) mins.push_back(p);
            }
            m_new = std::move(mins);
        }

        std::vector<std::pair<Relation, std::vector<Macrostate>>> fresh;
        for (Macrostate p : m_new) {
            if (seen_macro.count(p)) continue;
            seen_macro.insert(p);
            out.pi.push_back(p);
            Relation r = space.rel_of(p);
            if (seen_rel.insert(r).second && !out.rels.contains(r))
                fresh.emplace_back(std::move(r), std::vector<Macrostate>{p});
        }
        if (fresh.empty()) return out;
        out.rels = composition_closure(space, out.rels, std::move(fresh), antichain);
        for (const Relation& r : out.rels.elems) seen_rel.insert(r);
    }
}

static UniversalityResult run_universality(const HedgeAutomaton& h, bool antichain) {
    HorizontalSpace space(h);
    FixpointResult fx = macro_fixpoint(h, space, antichain, /*stop_on_counterexample=*/true);
    UniversalityResult res;
    res.universal = !fx.not_universal;
    if (fx.not_universal) {
        res.witness_macrostate = fx.counterexample;
        res.witness = witness_tree(fx.provenance, fx.counterexample);
    }
    return res;
}

UniversalityResult universality_plain(const HedgeAutomaton& h) {
    return run_universality(h, false);
}

UniversalityResult universality_antichain(const HedgeAutomaton& h) {
    return run_universality(h, true);
}

}  // namespace tvu
