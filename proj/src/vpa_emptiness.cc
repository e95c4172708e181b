// Emptiness via the hedge-function fixpoint: the language is non-empty
// iff some function realizable by a single tree sends an initial state
// to a final one.

#include "tvu/hedge_functions.hh"
#include "tvu/vpa.hh"

namespace tvu {

EmptinessResult is_empty(const Vpa& a) {
    if (a.final().empty() || a.initial().empty()) return {true, std::nullopt};

    HedgeFnSet fns = hedge_functions(a);
    for (uint32_t i = 0; i < fns.size(); ++i) {
        if (!fns.tree_witness[i]) continue;
        for (VState qi : a.initial()) {
            bool hit = false;
            fns.fns[i].for_each_in_row(qi, [&](uint32_t p) {
                if (a.is_final(p)) hit = true;
            });
            if (hit) return {false, fns.tree_witness[i]};
        }
    }
    return {true, std::nullopt};
}

}  // namespace tvu
