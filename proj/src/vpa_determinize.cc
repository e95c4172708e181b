// Summary determinization. A deterministic state is the relation
// { (q,q') | (q,ε) -->⟨hedge read at this level⟩--> (q',ε) } over the
// original states; on an open tag the relation is saved on the stack and
// the new level starts from the identity, on a close tag the completed
// subtree is folded into the parent relation. Complete by construction:
// the all-empty relation acts as the sink.

#include <algorithm>
#include <map>
#include <string>

#include "tvu/error.hh"
#include "tvu/vpa.hh"

namespace tvu {

namespace {

using Rel = std::vector<uint64_t>;  // row masks over the original Q

Rel identity_rel(size_t n) {
    Rel r(n, 0);
    for (size_t q = 0; q < n; ++q) r[q] = uint64_t{1} << q;
    return r;
}

// Relation of the subtree b⟨level⟩ā folded from the level relation:
// q -> q' iff some call (q,b,γ,p), (p,p') in level, return (p',ā,γ,q').
Rel tree_step(const Vpa& a, const Rel& level, Letter open_letter, Letter close_letter) {
    const size_t n = a.num_states();
    Rel out(n, 0);
    for (const VpaRule& call : a.calls()) {
        if (call.letter != open_letter) continue;
        uint64_t mid = level[call.dst];
        while (mid) {
            VState p = static_cast<VState>(__builtin_ctzll(mid));
            mid &= mid - 1;
            for (const VpaRule& ret : a.rets_from(p, close_letter, call.sym))
                out[call.src] |= uint64_t{1} << ret.dst;
        }
    }
    return out;
}

Rel compose_rel(const Rel& first, const Rel& then) {
    const size_t n = first.size();
    Rel out(n, 0);
    for (size_t q = 0; q < n; ++q) {
        uint64_t mid = first[q];
        while (mid) {
            size_t p = static_cast<size_t>(__builtin_ctzll(mid));
            mid &= mid - 1;
            out[q] |= then[p];
        }
    }
    return out;
}

}  // namespace

Vpa determinize(const Vpa& a) {
    const size_t n = a.num_states();
    if (n > 64) throw Error("determinize limited to 64 states");
    const size_t nl = a.alphabet().size();

    std::map<Rel, VState> state_id;
    std::vector<Rel> states;
    auto intern = [&](const Rel& r) -> VState {
        auto it = state_id.find(r);
        if (it != state_id.end()) return it->second;
        VState id = static_cast<VState>(states.size());
        state_id.emplace(r, id);
        states.push_back(r);
        return id;
    };

    const VState d0 = intern(identity_rel(n));

    // Close under "child level folded into parent level" for every letter
    // pair; mismatched pairs keep the rule set total.
    for (bool grew = true; grew;) {
        grew = false;
        const size_t sz = states.size();
        for (size_t child = 0; child < sz; ++child)
            for (Letter ol = 0; ol < nl; ++ol)
                for (Letter cl = 0; cl < nl; ++cl) {
                    Rel stepped = tree_step(a, states[child], ol, cl);
                    for (size_t parent = 0; parent < sz; ++parent) {
                        size_t before = states.size();
                        intern(compose_rel(states[parent], stepped));
                        if (states.size() != before) grew = true;
                    }
                }
    }

    // Stack symbols encode (saved relation, open letter).
    std::vector<std::string> sym_names;
    std::map<std::pair<VState, Letter>, StackSym> sym_id;
    for (VState d = 0; d < static_cast<VState>(states.size()); ++d)
        for (Letter l = 0; l < nl; ++l) {
            sym_id.emplace(std::make_pair(d, l), static_cast<StackSym>(sym_names.size()));
            sym_names.push_back("g" + std::to_string(d) + "_" + a.alphabet().name(l));
        }

    std::vector<VpaRule> calls, rets;
    for (VState d = 0; d < static_cast<VState>(states.size()); ++d)
        for (Letter l = 0; l < nl; ++l) calls.push_back({d, l, sym_id.at({d, l}), d0});
    for (VState child = 0; child < static_cast<VState>(states.size()); ++child)
        for (Letter cl = 0; cl < nl; ++cl)
            for (VState parent = 0; parent < static_cast<VState>(states.size()); ++parent)
                for (Letter ol = 0; ol < nl; ++ol) {
                    Rel next = compose_rel(states[parent], tree_step(a, states[child], ol, cl));
                    rets.push_back({child, cl, sym_id.at({parent, ol}), state_id.at(next)});
                }

    uint64_t final_mask = 0;
    for (VState qf : a.final()) final_mask |= uint64_t{1} << qf;
    std::vector<VState> finals;
    for (VState d = 0; d < static_cast<VState>(states.size()); ++d)
        for (VState qi : a.initial())
            if (states[d][qi] & final_mask) {
                finals.push_back(d);
                break;
            }

    std::vector<std::string> state_names;
    for (size_t i = 0; i < states.size(); ++i) state_names.push_back("d" + std::to_string(i));

    return Vpa(a.alphabet(), std::move(state_names), std::move(sym_names), {d0},
               std::move(finals), std::move(calls), std::move(rets));
}

Vpa complement_deterministic(const Vpa& a) {
    if (!a.is_deterministic())
        throw NotDeterministic("complement requires a deterministic automaton");
    if (!a.is_complete())
        throw NotDeterministic("complement requires a complete automaton");
    std::vector<VState> flipped;
    for (VState q = 0; q < static_cast<VState>(a.num_states()); ++q)
        if (!a.is_final(q)) flipped.push_back(q);
    return Vpa(a.alphabet(), a.state_names(), a.stack_names(), a.initial(), flipped, a.calls(),
               a.rets());
}

}  // namespace tvu
