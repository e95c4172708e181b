#include "tvu/hedge_functions.hh"

#include <algorithm>
#include <deque>
#include <map>

#include "tvu/error.hh"

namespace tvu {

HedgeFn hedge_fn_identity(uint32_t n) {
    HedgeFn f(n);
    for (uint32_t q = 0; q < n; ++q) f.set(q, q);
    return f;
}

HedgeFn hedge_fn_then(const HedgeFn& first, const HedgeFn& then) {
    HedgeFn out(first.n);
    for (uint32_t q = 0; q < first.n; ++q) {
        uint64_t* dst = out.row(q);
        first.for_each_in_row(q, [&](uint32_t p) {
            const uint64_t* src = then.row(p);
            for (uint32_t w = 0; w < out.wpr; ++w) dst[w] |= src[w];
        });
    }
    return out;
}

HedgeFn hedge_fn_add_root(const Vpa& a, Letter letter, const HedgeFn& inner) {
    HedgeFn out(static_cast<uint32_t>(a.num_states()));
    for (const VpaRule& call : a.calls()) {
        if (call.letter != letter) continue;
        inner.for_each_in_row(call.dst, [&](uint32_t p) {
            for (const VpaRule& ret : a.rets_from(p, letter, call.sym))
                out.set(call.src, ret.dst);
        });
    }
    return out;
}

std::optional<uint32_t> HedgeFnSet::find(const HedgeFn& f) const {
    for (uint32_t i = 0; i < fns.size(); ++i)
        if (fns[i] == f) return i;
    return std::nullopt;
}

namespace {

struct Builder {
    const Vpa& a;
    bool pruned;
    std::vector<HedgeFn> fns;
    std::vector<Hedge> wit;
    std::vector<std::optional<Tree>> tree_wit;
    std::vector<bool> alive;
    std::map<std::vector<uint64_t>, uint32_t> index;  // only alive entries
    std::deque<uint32_t> todo;

    Builder(const Vpa& vpa, bool prune) : a(vpa), pruned(prune) {}

    // Inserts f; in pruned mode drops it when dominated and evicts
    // dominated ones. A tree witness is recorded even when f is already
    // present, so the single-tree flag is complete.
    void offer(HedgeFn f, Hedge w, std::optional<Tree> tw) {
        auto it = index.find(f.bits);
        if (it != index.end()) {
            if (tw && !tree_wit[it->second]) tree_wit[it->second] = std::move(tw);
            return;
        }
        if (pruned) {
            for (uint32_t i = 0; i < fns.size(); ++i)
                if (alive[i] && fns[i].pointwise_le(f)) return;
            for (uint32_t i = 0; i < fns.size(); ++i)
                if (alive[i] && f.pointwise_le(fns[i])) {
                    alive[i] = false;
                    index.erase(fns[i].bits);
                }
        }
        uint32_t id = static_cast<uint32_t>(fns.size());
        index.emplace(f.bits, id);
        fns.push_back(std::move(f));
        wit.push_back(std::move(w));
        tree_wit.push_back(std::move(tw));
        alive.push_back(true);
        todo.push_back(id);
    }

    void run() {
        offer(hedge_fn_identity(static_cast<uint32_t>(a.num_states())), {}, std::nullopt);
        while (!todo.empty()) {
            uint32_t fi = todo.front();
            todo.pop_front();
            if (!alive[fi]) continue;
            size_t snapshot = fns.size();
            for (size_t i = 0; i < snapshot; ++i) {
                if (!alive[fi]) break;
                if (!alive[i]) continue;
                {
                    Hedge w = wit[i];
                    w.insert(w.end(), wit[fi].begin(), wit[fi].end());
                    offer(hedge_fn_then(fns[i], fns[fi]), std::move(w), std::nullopt);
                }
                if (!alive[fi] || !alive[i]) continue;
                {
                    Hedge w = wit[fi];
                    w.insert(w.end(), wit[i].begin(), wit[i].end());
                    offer(hedge_fn_then(fns[fi], fns[i]), std::move(w), std::nullopt);
                }
            }
            if (!alive[fi]) continue;
            for (Letter l = 0; l < a.alphabet().size(); ++l) {
                Tree t{l, wit[fi]};
                offer(hedge_fn_add_root(a, l, fns[fi]), Hedge{t}, t);
                if (!alive[fi]) break;
            }
        }
    }

    HedgeFnSet finish() {
        HedgeFnSet out;
        HedgeFn id = hedge_fn_identity(static_cast<uint32_t>(a.num_states()));
        for (uint32_t i = 0; i < fns.size(); ++i) {
            if (!alive[i]) continue;
            if (fns[i] == id) out.id_index = static_cast<uint32_t>(out.fns.size());
            out.fns.push_back(std::move(fns[i]));
            out.witness.push_back(std::move(wit[i]));
            out.tree_witness.push_back(std::move(tree_wit[i]));
        }
        return out;
    }
};

}  // namespace

HedgeFnSet hedge_functions(const Vpa& a) {
    Builder b(a, /*prune=*/false);
    b.run();
    return b.finish();
}

HedgeFnSet minimal_hedge_functions(const Vpa& a, bool pruned_worklist) {
    if (!pruned_worklist) {
        HedgeFnSet full = hedge_functions(a);
        HedgeFnSet out;
        HedgeFn id = hedge_fn_identity(static_cast<uint32_t>(a.num_states()));
        for (uint32_t i = 0; i < full.size(); ++i) {
            bool minimal = true;
            for (uint32_t j = 0; j < full.size() && minimal; ++j)
                if (i != j && full.fns[j].pointwise_le(full.fns[i])) minimal = false;
            if (!minimal) continue;
            if (full.fns[i] == id) out.id_index = static_cast<uint32_t>(out.fns.size());
            out.fns.push_back(full.fns[i]);
            out.witness.push_back(full.witness[i]);
            out.tree_witness.push_back(full.tree_witness[i]);
        }
        return out;
    }
    Builder b(a, /*prune=*/true);
    b.run();
    return b.finish();
}

}  // namespace tvu
