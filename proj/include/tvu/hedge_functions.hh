// hedge_functions.hh -- the finite monoid of functions rel_h mapping a
// state to the states reachable across a hedge at constant stack

#pragma once

#include <optional>
#include <vector>

#include "tvu/vpa.hh"

namespace tvu {

/// rel_h : Q -> 2^Q as a boolean matrix, one bit row per state.
/// Composition is written in application order: "h1 then h2" applies h1
/// first (rel_{h1 h2} = rel_{h2} ∘ rel_{h1}).
struct HedgeFn {
    uint32_t n = 0;
    uint32_t wpr = 1;  // words per row
    std::vector<uint64_t> bits;

    HedgeFn() = default;
    explicit HedgeFn(uint32_t states)
        : n(states), wpr((states + 63) / 64 ? (states + 63) / 64 : 1), bits(size_t(n) * wpr, 0) {}

    const uint64_t* row(uint32_t q) const { return &bits[size_t(q) * wpr]; }
    uint64_t* row(uint32_t q) { return &bits[size_t(q) * wpr]; }
    bool get(uint32_t q, uint32_t p) const { return (row(q)[p >> 6] >> (p & 63)) & 1; }
    void set(uint32_t q, uint32_t p) { row(q)[p >> 6] |= uint64_t{1} << (p & 63); }

    template <typename F>
    void for_each_in_row(uint32_t q, F&& f) const {
        const uint64_t* r = row(q);
        for (uint32_t w = 0; w < wpr; ++w) {
            uint64_t word = r[w];
            while (word) {
                f(static_cast<uint32_t>(w * 64 + __builtin_ctzll(word)));
                word &= word - 1;
            }
        }
    }

    bool operator==(const HedgeFn&) const = default;
    bool pointwise_le(const HedgeFn& o) const {
        for (size_t i = 0; i < bits.size(); ++i)
            if (bits[i] & ~o.bits[i]) return false;
        return true;
    }
};

HedgeFn hedge_fn_identity(uint32_t n);
HedgeFn hedge_fn_then(const HedgeFn& first, const HedgeFn& then);
/// rel_{a h ā} from rel_h.
HedgeFn hedge_fn_add_root(const Vpa& a, Letter letter, const HedgeFn& inner);

struct HedgeFnSet {
    std::vector<HedgeFn> fns;
    std::vector<Hedge> witness;                      // some hedge realizing each fn
    std::vector<std::optional<Tree>> tree_witness;   // set iff realizable by one tree
    std::optional<uint32_t> id_index;                // index of rel_ε when present

    size_t size() const { return fns.size(); }
    std::optional<uint32_t> find(const HedgeFn& f) const;
};

/// Every function rel_h, h ranging over all hedges (worklist closure
/// under composition and add-root).
HedgeFnSet hedge_functions(const Vpa& a);

/// Pointwise-minimal functions only. With `pruned_worklist` the worklist
/// itself keeps antichains; otherwise the full set is filtered after the
/// fact. Both produce the same set.
HedgeFnSet minimal_hedge_functions(const Vpa& a, bool pruned_worklist = true);

}  // namespace tvu
