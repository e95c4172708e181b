// Translation of a VPA into a hedge automaton over state pairs. A rule
// (a, L_{s,s'}, (q,q')) exists whenever some call (q,a,γ,s) matches a
// return (s',ā,γ,q'); L_{s,s'} is the chain language of pairs
// (s,q1)(q1,q2)...(qn,s'), plus the empty word when s = s'.

#include <map>

#include "tvu/error.hh"
#include "tvu/vpa.hh"

namespace tvu {

namespace {

// Chain-language NFA template: states are Q plus one fresh entry, every
// pair letter (p,r) steps p -> r, the entry mimics s. The entry is also
// final when s = s', which keeps `accepts_empty == initial ∩ final` true.
HorizontalNfa chain_nfa(const Vpa& a, VState s, VState s_prime) {
    const uint32_t n = static_cast<uint32_t>(a.num_states());
    const uint32_t entry = n;
    HorizontalNfa nfa;
    nfa.num_states = n + 1;
    nfa.initial = {entry};
    nfa.final = {s_prime};
    if (s == s_prime) nfa.final.push_back(entry);
    auto pair_state = [&](VState p, VState r) -> HState { return p * n + r; };
    for (VState p = 0; p < n; ++p)
        for (VState r = 0; r < n; ++r) {
            nfa.transitions.push_back({p, pair_state(p, r), r});
            if (p == s) nfa.transitions.push_back({entry, pair_state(p, r), r});
        }
    nfa.normalize();
    return nfa;
}

}  // namespace

HedgeAutomaton translate_to_hedge(const Vpa& a) {
    const size_t n = a.num_states();
    if (n * n > 64)
        throw Error("translate_to_hedge: |Q|^2 = " + std::to_string(n * n) +
                    " exceeds the 64-state hedge automaton limit");

    std::vector<std::string> pair_names;
    pair_names.reserve(n * n);
    for (size_t q = 0; q < n; ++q)
        for (size_t p = 0; p < n; ++p)
            pair_names.push_back(a.state_names()[q] + "." + a.state_names()[p]);

    auto pair_id = [&](VState q, VState p) -> HState {
        return static_cast<HState>(q * n + p);
    };

    std::vector<HState> finals;
    for (VState qi : a.initial())
        for (VState qf : a.final()) finals.push_back(pair_id(qi, qf));

    // Pairs (s,s') per rule head (a, (q,q')), grouped to honour the
    // one-rule-per-(letter,target) invariant.
    std::map<std::pair<Letter, HState>, std::vector<std::pair<VState, VState>>> heads;
    for (const VpaRule& call : a.calls()) {
        for (VState sp = 0; sp < static_cast<VState>(n); ++sp) {
            for (const VpaRule& ret : a.rets_from(sp, call.letter, call.sym)) {
                heads[{call.letter, pair_id(call.src, ret.dst)}].push_back({call.dst, sp});
            }
        }
    }

    std::vector<HedgeRule> rules;
    for (auto& [head, pairs] : heads) {
        std::sort(pairs.begin(), pairs.end());
        pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
        HorizontalNfa lang = chain_nfa(a, pairs[0].first, pairs[0].second);
        for (size_t i = 1; i < pairs.size(); ++i)
            lang.merge_union(chain_nfa(a, pairs[i].first, pairs[i].second));
        rules.push_back({head.first, head.second, std::move(lang)});
    }

    return HedgeAutomaton(a.alphabet(), std::move(pair_names), std::move(finals),
                          std::move(rules));
}

}  // namespace tvu
