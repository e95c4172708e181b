#include "tvu/relations.hh"

#include <algorithm>
#include <cassert>
#include <deque>

namespace tvu {

HorizontalSpace::HorizontalSpace(const HedgeAutomaton& h) {
    const auto& rules = h.rules();
    body_size_.reserve(rules.size());
    for (const HedgeRule& r : rules) {
        uint32_t n = r.lang.num_states;
        body_size_.push_back(n);
        wpb_.push_back((n + 63) / 64);
        body_word_off_.push_back(total_words_);
        total_words_ += static_cast<size_t>(n) * wpb_.back();
        total_states_ += n;

        RuleView v;
        v.letter = r.letter;
        v.target = r.target;
        v.initial = r.lang.initial;
        v.final_mask.assign(wpb_.back(), 0);
        for (uint32_t f : r.lang.final) v.final_mask[f >> 6] |= uint64_t{1} << (f & 63);
        v.accepts_empty = r.lang.accepts_empty;
        rule_views_.push_back(std::move(v));
    }

    state_edges_.assign(h.num_states(), zero());
    for (size_t b = 0; b < rules.size(); ++b)
        for (const HTransition& t : rules[b].lang.transitions)
            set(state_edges_[t.via], b, t.src, t.dst);
}

Relation HorizontalSpace::identity() const {
    Relation r = zero();
    for (size_t b = 0; b < body_size_.size(); ++b)
        for (uint32_t s = 0; s < body_size_[b]; ++s) set(r, b, s, s);
    return r;
}

Relation HorizontalSpace::compose(const Relation& first, const Relation& then) const {
    Relation out = zero();
    for (size_t b = 0; b < body_size_.size(); ++b) {
        const uint32_t n = body_size_[b];
        const uint32_t w = wpb_[b];
        const size_t base = body_word_off_[b];
        for (uint32_t i = 0; i < n; ++i) {
            const uint64_t* row = &first.w[base + static_cast<size_t>(i) * w];
            uint64_t* dst = &out.w[base + static_cast<size_t>(i) * w];
            for (uint32_t wi = 0; wi < w; ++wi) {
                uint64_t word = row[wi];
                while (word) {
                    uint32_t j = wi * 64 + static_cast<uint32_t>(__builtin_ctzll(word));
                    word &= word - 1;
                    const uint64_t* jrow = &then.w[base + static_cast<size_t>(j) * w];
                    for (uint32_t k = 0; k < w; ++k) dst[k] |= jrow[k];
                }
            }
        }
    }
    return out;
}

bool HorizontalSpace::subset(const Relation& a, const Relation& b) const {
    for (size_t i = 0; i < a.w.size(); ++i)
        if (a.w[i] & ~b.w[i]) return false;
    return true;
}

void HorizontalSpace::unite(Relation& into, const Relation& r) {
    for (size_t i = 0; i < into.w.size(); ++i) into.w[i] |= r.w[i];
}

size_t HorizontalSpace::popcount(const Relation& r) const {
    size_t c = 0;
    for (uint64_t x : r.w) c += static_cast<size_t>(__builtin_popcountll(x));
    return c;
}

Relation HorizontalSpace::rel_of(Macrostate p) const {
    Relation r = zero();
    while (p) {
        unsigned q = static_cast<unsigned>(__builtin_ctzll(p));
        p &= p - 1;
        unite(r, state_edges_[q]);
    }
    return r;
}

Macrostate HorizontalSpace::post_a(Letter a, const Relation& r) const {
    Macrostate out = 0;
    for (size_t b = 0; b < rule_views_.size(); ++b) {
        const RuleView& v = rule_views_[b];
        if (v.letter != a) continue;
        if (out & (Macrostate{1} << v.target)) continue;
        const uint32_t w = wpb_[b];
        const size_t base = body_word_off_[b];
        for (uint32_t s : v.initial) {
            const uint64_t* row = &r.w[base + static_cast<size_t>(s) * w];
            bool hit = false;
            for (uint32_t k = 0; k < w; ++k)
                if (row[k] & v.final_mask[k]) { hit = true; break; }
            if (hit) {
                out |= Macrostate{1} << v.target;
                break;
            }
        }
    }
    return out;
}

uint32_t RelationMonoid::add(Relation r, std::vector<Macrostate> wit) {
    auto it = index.find(r);
    if (it != index.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(elems.size());
    index.emplace(r, id);
    elems.push_back(std::move(r));
    witness.push_back(std::move(wit));
    return id;
}

namespace {

// Antichain-mode working set: keeps only ⊆-minimal relations; adding a
// dominated relation is a no-op, adding a dominating one evicts.
struct MinSet {
    const HorizontalSpace& space;
    std::vector<Relation> elems;
    std::vector<std::vector<Macrostate>> wit;
    std::vector<bool> alive;

    explicit MinSet(const HorizontalSpace& s) : space(s) {}

    // Returns index if inserted, UINT32_MAX if dominated by an existing one.
    uint32_t insert(Relation r, std::vector<Macrostate> w) {
        for (size_t i = 0; i < elems.size(); ++i) {
            if (!alive[i]) continue;
            if (space.subset(elems[i], r)) return UINT32_MAX;  // covers r == existing too
        }
        for (size_t i = 0; i < elems.size(); ++i)
            if (alive[i] && space.subset(r, elems[i])) alive[i] = false;
        elems.push_back(std::move(r));
        wit.push_back(std::move(w));
        alive.push_back(true);
        return static_cast<uint32_t>(elems.size() - 1);
    }
};

}  // namespace

RelationMonoid composition_closure(const HorizontalSpace& space, const RelationMonoid& base,
                                   std::vector<std::pair<Relation, std::vector<Macrostate>>> fresh,
                                   bool prune_minimal) {
    if (!prune_minimal) {
        RelationMonoid m = base;
        std::deque<uint32_t> todo;
        for (auto& [r, w] : fresh) {
            if (m.contains(r)) continue;
            todo.push_back(m.add(std::move(r), std::move(w)));
        }
        while (!todo.empty()) {
            uint32_t fi = todo.front();
            todo.pop_front();
            // m.elems grows while iterating; the worklist picks new ones up.
            size_t snapshot = m.size();
            for (size_t i = 0; i < snapshot; ++i) {
                Relation a = space.compose(m.elems[i], m.elems[fi]);
                if (!m.contains(a)) {
                    std::vector<Macrostate> w = m.witness[i];
                    w.insert(w.end(), m.witness[fi].begin(), m.witness[fi].end());
                    todo.push_back(m.add(std::move(a), std::move(w)));
                }
                Relation b = space.compose(m.elems[fi], m.elems[i]);
                if (!m.contains(b)) {
                    std::vector<Macrostate> w = m.witness[fi];
                    w.insert(w.end(), m.witness[i].begin(), m.witness[i].end());
                    todo.push_back(m.add(std::move(b), std::move(w)));
                }
            }
        }
        return m;
    }

    // Minimal mode: the working set stays an antichain throughout.
    MinSet ms(space);
    std::deque<uint32_t> todo;
    for (size_t i = 0; i < base.elems.size(); ++i) ms.insert(base.elems[i], base.witness[i]);
    for (auto& [r, w] : fresh) {
        uint32_t id = ms.insert(std::move(r), std::move(w));
        if (id != UINT32_MAX) todo.push_back(id);
    }
    while (!todo.empty()) {
        uint32_t fi = todo.front();
        todo.pop_front();
        if (!ms.alive[fi]) continue;
        size_t snapshot = ms.elems.size();
        for (size_t i = 0; i < snapshot; ++i) {
            // An evicted relation is dominated; products of its dominator
            // dominate whatever it would have produced.
            if (!ms.alive[fi]) break;
            if (!ms.alive[i]) continue;
            {
                Relation a = space.compose(ms.elems[i], ms.elems[fi]);
                std::vector<Macrostate> w = ms.wit[i];
                w.insert(w.end(), ms.wit[fi].begin(), ms.wit[fi].end());
                uint32_t id = ms.insert(std::move(a), std::move(w));
                if (id != UINT32_MAX) todo.push_back(id);
            }
            if (!ms.alive[fi] || !ms.alive[i]) continue;
            {
                Relation b = space.compose(ms.elems[fi], ms.elems[i]);
                std::vector<Macrostate> w = ms.wit[fi];
                w.insert(w.end(), ms.wit[i].begin(), ms.wit[i].end());
                uint32_t id = ms.insert(std::move(b), std::move(w));
                if (id != UINT32_MAX) todo.push_back(id);
            }
        }
    }
    RelationMonoid out;
    for (size_t i = 0; i < ms.elems.size(); ++i)
        if (ms.alive[i]) out.add(std::move(ms.elems[i]), std::move(ms.wit[i]));
    return out;
}

std::vector<uint32_t> minimal_indices(const HorizontalSpace& space,
                                      const std::vector<Relation>& elems) {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < elems.size(); ++i) {
        bool minimal = true;
        for (uint32_t j = 0; j < elems.size() && minimal; ++j)
            if (i != j && space.subset(elems[j], elems[i]) && elems[j] != elems[i]) minimal = false;
        if (minimal) out.push_back(i);
    }
    return out;
}

std::vector<uint32_t> maximal_indices(const HorizontalSpace& space,
                                      const std::vector<Relation>& elems) {
    std::vector<uint32_t> out;
    for (uint32_t i = 0; i < elems.size(); ++i) {
        bool maximal = true;
        for (uint32_t j = 0; j < elems.size() && maximal; ++j)
            if (i != j && space.subset(elems[i], elems[j]) && elems[j] != elems[i]) maximal = false;
        if (maximal) out.push_back(i);
    }
    return out;
}

}  // namespace tvu
