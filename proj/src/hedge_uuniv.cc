#include "tvu/hedge_uuniv.hh"

#include <algorithm>
#include <cassert>

namespace tvu {

PiMonoid::PiMonoid(const HedgeAutomaton& h) : automaton(h), space(automaton) {
    FixpointResult fx = macro_fixpoint(automaton, space, /*antichain=*/false,
                                       /*stop_on_counterexample=*/false);
    pi = std::move(fx.pi);
    rels = std::move(fx.rels);
    provenance = std::move(fx.provenance);
    qf = automaton.final_mask();
    id_index = rels.index.at(space.identity());

    rels_min = minimal_indices(space, rels.elems);
    rels_max = maximal_indices(space, rels.elems);

    popcount_desc.resize(rels.size());
    for (uint32_t i = 0; i < rels.size(); ++i) popcount_desc[i] = i;
    std::stable_sort(popcount_desc.begin(), popcount_desc.end(), [&](uint32_t a, uint32_t b) {
        return space.popcount(rels.elems[a]) > space.popcount(rels.elems[b]);
    });

    const size_t nl = automaton.alphabet().size();
    post_of.assign(nl, std::vector<Macrostate>(rels.size()));
    relof_post.assign(nl, std::vector<uint32_t>(rels.size()));
    for (Letter a = 0; a < nl; ++a) {
        for (uint32_t i = 0; i < rels.size(); ++i) {
            Macrostate p = space.post_a(a, rels.elems[i]);
            post_of[a][i] = p;
            auto it = rels.index.find(space.rel_of(p));
            assert(it != rels.index.end() && "rel of a produced macrostate must be in the monoid");
            relof_post[a][i] = it->second;
        }
    }
}

PiMonoid precompute(const HedgeAutomaton& h) { return PiMonoid(h); }

UUnivStream::UUnivStream(const PiMonoid& s, bool antichain) : s_(s), antichain_(antichain) {}

Letter UUnivStream::top_letter() const {
    if (frames_.empty()) throw StackUnderflow("no open tag");
    return frames_.back().a;
}

bool UUnivStream::top_y_empty() const {
    if (frames_.empty()) throw StackUnderflow("no open tag");
    return antichain_ ? frames_.back().y_max.empty() : frames_.back().y.none();
}

bool UUnivStream::top_y_contains(uint32_t rel_index) const {
    if (frames_.empty()) throw StackUnderflow("no open tag");
    const Frame& f = frames_.back();
    if (!antichain_) return f.y.test(rel_index);
    for (uint32_t m : f.y_max)
        if (s_.space.subset(s_.rels.elems[rel_index], s_.rels.elems[m])) return true;
    return false;
}

const std::vector<uint32_t>& UUnivStream::top_y_max() const {
    if (frames_.empty()) throw StackUnderflow("no open tag");
    if (!antichain_) throw Error("top_y_max requires antichain mode");
    return frames_.back().y_max;
}

std::optional<uint32_t> UUnivStream::top_y_member() const {
    if (frames_.empty()) throw StackUnderflow("no open tag");
    const Frame& f = frames_.back();
    if (antichain_) {
        if (f.y_max.empty()) return std::nullopt;
        return f.y_max.front();
    }
    std::optional<uint32_t> out;
    f.y.for_each([&](size_t i) {
        if (!out) out = static_cast<uint32_t>(i);
    });
    return out;
}

uint32_t UUnivStream::compose_idx(uint32_t i, uint32_t j) {
    uint64_t key = (static_cast<uint64_t>(i) << 32) | j;
    auto it = compose_cache_.find(key);
    if (it != compose_cache_.end()) return it->second;
    Relation r = s_.space.compose(s_.rels.elems[i], s_.rels.elems[j]);
    auto idx = s_.rels.index.find(r);
    assert(idx != s_.rels.index.end() && "monoid must be closed under composition");
    compose_cache_.emplace(key, idx->second);
    return idx->second;
}

uint32_t UUnivStream::relof_post_idx(Letter a, uint32_t r) const { return s_.relof_post[a][r]; }

bool UUnivStream::pref_member(const Frame& parent, uint32_t x) {
    if (antichain_) {
        // Y' is downward closed: x∘s ∈ Y' iff x∘s ⊆ some maximal element,
        // and s can range over the minimal antichain only.
        for (uint32_t s : s_.rels_min) {
            uint32_t c = compose_idx(x, s);
            for (uint32_t m : parent.y_max)
                if (s_.space.subset(s_.rels.elems[c], s_.rels.elems[m])) return true;
        }
        return false;
    }
    for (uint32_t s = 0; s < s_.nrels(); ++s)
        if (parent.y.test(compose_idx(x, s))) return true;
    return false;
}

UUnivStream::Frame UUnivStream::make_frame(Letter a, Bits y, std::vector<uint32_t> y_max) const {
    return Frame{std::move(y), std::move(y_max), s_.id_index, a};
}

StreamUpshot UUnivStream::open_root(Letter a) {
    if (!frames_.empty()) throw Error("open_root requires an empty stack");
    bool empty = true;
    if (antichain_) {
        std::vector<uint32_t> kept;
        for (uint32_t i : s_.popcount_desc) {
            if ((s_.post_of[a][i] & s_.qf) != 0) continue;
            bool dominated = false;
            for (uint32_t k : kept)
                if (s_.space.subset(s_.rels.elems[i], s_.rels.elems[k])) { dominated = true; break; }
            if (!dominated) kept.push_back(i);
        }
        std::sort(kept.begin(), kept.end());
        empty = kept.empty();
        frames_.push_back(make_frame(a, Bits{}, std::move(kept)));
    } else {
        Bits y(s_.nrels());
        for (uint32_t i = 0; i < s_.nrels(); ++i)
            if ((s_.post_of[a][i] & s_.qf) == 0) y.set(i);
        empty = y.none();
        frames_.push_back(make_frame(a, std::move(y), {}));
    }
    return empty ? StreamUpshot::UUniversal : StreamUpshot::Continue;
}

StreamUpshot UUnivStream::next_open_tag(Letter a) {
    if (frames_.empty()) throw StackUnderflow("next_open_tag requires a non-empty stack");
    if (antichain_) return opt_next_open_tag(a);
    Frame& parent = frames_.back();
    Bits y(s_.nrels());
    for (uint32_t i = 0; i < s_.nrels(); ++i) {
        uint32_t x = compose_idx(parent.r, relof_post_idx(a, i));
        if (pref_member(parent, x)) y.set(i);
    }
    bool empty = y.none();
    frames_.push_back(make_frame(a, std::move(y), {}));
    return empty ? StreamUpshot::UUniversal : StreamUpshot::Continue;
}

StreamUpshot UUnivStream::opt_next_open_tag(Letter a) {
    if (frames_.empty()) throw StackUnderflow("opt_next_open_tag requires a non-empty stack");
    if (!antichain_) throw Error("opt_next_open_tag requires antichain mode");
    Frame& parent = frames_.back();

    // Candidates are scanned supersets-first, so a surviving candidate is
    // maximal among the ones still alive. Keeping it prunes its subsets.
    std::vector<bool> dead(s_.nrels(), false);
    std::vector<uint32_t> kept;
    for (uint32_t r : s_.popcount_desc) {
        if (dead[r]) continue;
        uint32_t x = compose_idx(parent.r, relof_post_idx(a, r));
        bool in_y = false;
        for (uint32_t rr : s_.rels_min) {
            uint32_t c = compose_idx(x, rr);
            for (uint32_t m : parent.y_max)
                if (s_.space.subset(s_.rels.elems[c], s_.rels.elems[m])) { in_y = true; break; }
            if (in_y) break;
        }
        if (in_y) {
            kept.push_back(r);
            for (uint32_t c = 0; c < s_.nrels(); ++c)
                if (!dead[c] && s_.space.subset(s_.rels.elems[c], s_.rels.elems[r])) dead[c] = true;
        } else {
            dead[r] = true;
        }
    }
    std::sort(kept.begin(), kept.end());
    bool empty = kept.empty();
    frames_.push_back(make_frame(a, Bits{}, std::move(kept)));
    return empty ? StreamUpshot::UUniversal : StreamUpshot::Continue;
}

StreamUpshot UUnivStream::next_closed_tag(Letter a) {
    if (frames_.size() < 2)
        throw StackUnderflow("next_closed_tag requires stack depth >= 2");
    if (frames_.back().a != a)
        throw NotWellBalanced("close tag does not match the open tag");
    uint32_t child_r = frames_.back().r;
    frames_.pop_back();
    Frame& parent = frames_.back();
    parent.r = compose_idx(parent.r, relof_post_idx(a, child_r));
    return pref_member(parent, parent.r) ? StreamUpshot::Continue : StreamUpshot::UUniversal;
}

bool UUnivStream::close_root(Letter a) {
    if (frames_.empty()) throw StackUnderflow("close_root on an empty stack");
    if (frames_.size() != 1) throw Error("close_root requires stack depth 1");
    if (frames_.back().a != a)
        throw NotWellBalanced("close tag does not match the open tag");
    uint32_t r = frames_.back().r;
    frames_.pop_back();
    return (s_.post_of[a][r] & s_.qf) != 0;
}

StreamResult stream_check_hedge(const PiMonoid& s, std::span<const Event> events, bool antichain) {
    StreamResult res;
    UUnivStream st(s, antichain);
    bool completed = false;
    for (const Event& e : events) {
        if (completed)
            throw NotWellBalanced("events continue after the root was closed");
        if (e.kind == Kind::Open) {
            StreamUpshot u = st.depth() == 0 ? st.open_root(e.letter) : st.next_open_tag(e.letter);
            res.push(u == StreamUpshot::UUniversal ? TokenVerdict::Univ : TokenVerdict::Cont);
        } else if (st.depth() == 0) {
            throw NotWellBalanced("close without matching open");
        } else if (st.depth() == 1) {
            bool accepted = st.close_root(e.letter);
            completed = true;
            res.outcome = accepted ? StreamOutcome::Accepted : StreamOutcome::Rejected;
            res.push(accepted ? TokenVerdict::Univ : TokenVerdict::Cont);
        } else {
            StreamUpshot u = st.next_closed_tag(e.letter);
            res.push(u == StreamUpshot::UUniversal ? TokenVerdict::Univ : TokenVerdict::Cont);
        }
    }
    if (!completed) res.outcome = StreamOutcome::Undetermined;
    return res;
}

StreamResult stream_check_hedge(const HedgeAutomaton& h, std::span<const Event> events,
                                bool antichain) {
    PiMonoid s(h);
    return stream_check_hedge(s, events, antichain);
}

}  // namespace tvu
