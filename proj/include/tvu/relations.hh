// relations.hh -- relations over the disjoint union of horizontal-NFA
// state spaces, and their composition monoid

#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "tvu/hedge_automaton.hh"

namespace tvu {

// Horizontal NFAs never connect states of two different rules, so every
// relation over the disjoint union is block-diagonal per rule. A Relation
// stores one boolean matrix per rule body, packed row-wise.
struct Relation {
    std::vector<uint64_t> w;

    bool operator==(const Relation&) const = default;
};

struct RelationHash {
    size_t operator()(const Relation& r) const {
        size_t h = 0xcbf29ce484222325ull;
        for (uint64_t x : r.w) {
            h ^= x;
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

/// Per-automaton geometry and operations on relations. Built once from a
/// HedgeAutomaton and shared read-only afterwards.
class HorizontalSpace {
  public:
    explicit HorizontalSpace(const HedgeAutomaton& h);

    size_t num_bodies() const { return body_size_.size(); }
    size_t total_states() const { return total_states_; }
    size_t words() const { return total_words_; }

    Relation zero() const { return Relation{std::vector<uint64_t>(total_words_, 0)}; }
    Relation identity() const;

    Relation compose(const Relation& first, const Relation& then) const;
    bool subset(const Relation& a, const Relation& b) const;
    static void unite(Relation& into, const Relation& r);
    size_t popcount(const Relation& r) const;

    /// Relation of a single macrostate: all NFA edges labeled by one of
    /// its states.
    Relation rel_of(Macrostate p) const;

    /// Post_a over a relation: targets of a-rules whose language is
    /// witnessed by a pair (initial, final) present in the relation.
    Macrostate post_a(Letter a, const Relation& r) const;

    bool test(const Relation& r, size_t body, uint32_t s, uint32_t t) const {
        size_t base = body_word_off_[body] + s * wpb_[body];
        return (r.w[base + (t >> 6)] >> (t & 63)) & 1;
    }
    void set(Relation& r, size_t body, uint32_t s, uint32_t t) const {
        size_t base = body_word_off_[body] + s * wpb_[body];
        r.w[base + (t >> 6)] |= uint64_t{1} << (t & 63);
    }
    uint32_t body_states(size_t body) const { return body_size_[body]; }

  private:
    std::vector<uint32_t> body_size_;       // NFA states per rule
    std::vector<uint32_t> wpb_;             // words per row, per rule
    std::vector<size_t> body_word_off_;     // word offset of each body block
    size_t total_words_ = 0;
    size_t total_states_ = 0;

    struct RuleView {
        Letter letter;
        HState target;
        std::vector<uint32_t> initial;      // local rows
        std::vector<uint64_t> final_mask;   // wpb words
        bool accepts_empty;
    };
    std::vector<RuleView> rule_views_;      // body i <-> rule i
    std::vector<Relation> state_edges_;     // per hedge-automaton state
};

/// Finite monoid of relations with deduplication and per-element witness
/// macrostate words (the provenance used to materialize hedges).
struct RelationMonoid {
    std::vector<Relation> elems;
    std::vector<std::vector<Macrostate>> witness;
    std::unordered_map<Relation, uint32_t, RelationHash> index;

    uint32_t add(Relation r, std::vector<Macrostate> wit);
    bool contains(const Relation& r) const { return index.count(r) != 0; }
    size_t size() const { return elems.size(); }
};

/// Worklist closure of `base ∪ fresh` under composition (both orders
/// tried for every pair); `base` must already be closed. When
/// `prune_minimal` is set, only ⊆-minimal relations are kept at every
/// step and the result is the minimal antichain of the closure.
RelationMonoid composition_closure(const HorizontalSpace& space, const RelationMonoid& base,
                                   std::vector<std::pair<Relation, std::vector<Macrostate>>> fresh,
                                   bool prune_minimal = false);

/// Indices of the ⊆-minimal (or ⊆-maximal) elements of the monoid.
std::vector<uint32_t> minimal_indices(const HorizontalSpace& space,
                                      const std::vector<Relation>& elems);
std::vector<uint32_t> maximal_indices(const HorizontalSpace& space,
                                      const std::vector<Relation>& elems);

}  // namespace tvu
