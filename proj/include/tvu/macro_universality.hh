// macro_universality.hh -- hedge-automaton universality via macrostates,
// relation monoids and antichain pruning

#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "tvu/relations.hh"

namespace tvu {

/// How a macrostate was first produced: a letter plus the child
/// macrostate word of some witnessing tree.
struct MacroProvenance {
    Letter letter;
    std::vector<Macrostate> children;
};

using ProvenanceMap = std::unordered_map<Macrostate, MacroProvenance>;

/// A tree t with macrostate_of(t) = p, rebuilt from provenance.
Tree witness_tree(const ProvenanceMap& prov, Macrostate p);
Hedge witness_hedge(const ProvenanceMap& prov, const std::vector<Macrostate>& word);

struct FixpointResult {
    std::vector<Macrostate> pi;      // every macrostate produced, in order
    RelationMonoid rels;             // rel(Π*) (minimal antichain in antichain mode)
    ProvenanceMap provenance;
    bool not_universal = false;
    Macrostate counterexample = 0;   // valid when not_universal
};

/// Iterated Post fixpoint over macrostates. With `stop_on_counterexample`
/// it behaves like the universality check and stops at the first
/// macrostate missing every final state; otherwise it runs to the fixpoint
/// so that `pi` and `rels` are complete.
FixpointResult macro_fixpoint(const HedgeAutomaton& h, const HorizontalSpace& space,
                              bool antichain, bool stop_on_counterexample);

struct UniversalityResult {
    bool universal;
    Macrostate witness_macrostate = 0;
    std::optional<Tree> witness;     // rejected tree when not universal
};

UniversalityResult universality_plain(const HedgeAutomaton& h);
UniversalityResult universality_antichain(const HedgeAutomaton& h);

}  // namespace tvu
