// safe_configs.hh -- direct VPA u-universality through antichains of
// safe / leaf-safe configuration sets and minimal predecessors

#pragma once

#include <span>

#include "tvu/hedge_functions.hh"
#include "tvu/stream_result.hh"
#include "tvu/vpa.hh"

namespace tvu {

/// Family of configuration sets; antichains are kept canonically sorted
/// (by size, then lexicographically) and pairwise ⊆-incomparable.
using ConfigFamily = std::vector<ConfigSet>;

bool config_subset(const ConfigSet& a, const ConfigSet& b);
ConfigFamily minimize_family(ConfigFamily fam);
void canonicalize_family(ConfigFamily& fam);

/// Pointwise-union product: { a ∪ b | a ∈ A, b ∈ B }. Member sets must
/// be non-empty (EmptyMember otherwise).
ConfigFamily roundcup(const ConfigFamily& a, const ConfigFamily& b);
/// ⌊A ⊔ B⌋ computed through the split
/// ⌊(A ∩ B) ∪ (A\B ⊔ B\A)⌋ after minimizing both operands.
ConfigFamily roundcup_min(const ConfigFamily& a, const ConfigFamily& b);

/// Per-automaton precomputation for the safe-configuration method.
struct SafeContext {
    Vpa automaton;
    HedgeFnSet hmin;  // pointwise-minimal hedge functions

    explicit SafeContext(const Vpa& a);
};

/// ⌊Safe(a)⌋ at depth 1: the minimized ⊔ over minimal hedge functions of
/// the singleton families A_h.
ConfigFamily safe_init(const SafeContext& ctx, Letter a, StackPool& pool);

/// Step 1, ⌊Safe(u)⌋ -> ⌊LSafe(ua)⌋: minimal ā-predecessors of the
/// antichain elements, enumerated as minimal models of the predecessor
/// formulas (depth grows by one).
ConfigFamily step1_lsafe(const SafeContext& ctx, const ConfigFamily& safe_u, Letter a,
                         StackPool& pool);

/// Step 2, ⌊LSafe(ua)⌋ -> ⌊Safe(ua)⌋: ⊔ over minimal hedge functions of
/// the minimal h-predecessor families.
ConfigFamily step2_safe(const SafeContext& ctx, const ConfigFamily& lsafe);

/// Alternative step 2: grow each leaf-safe set element by element until
/// it passes the safety test. Requires the empty hedge to be minimal
/// (asserted); equal to step2_safe by construction.
ConfigFamily step2_safe_grow(const SafeContext& ctx, const ConfigFamily& lsafe,
                             const StackPool& pool);

/// One in-flight stream: Reach(u) plus the frame stack of
/// (letter, ⌊Safe(w a)⌋) entries, one per open tag.
class SafeStream {
  public:
    explicit SafeStream(const SafeContext& ctx, bool use_grow = false);

    TokenVerdict feed(Event e);
    bool completed() const { return completed_; }
    StreamOutcome outcome() const;
    size_t depth() const { return frames_.size(); }
    const ConfigSet& reach() const { return reach_; }
    const ConfigFamily& top_family() const;
    const StackPool& pool() const { return pool_; }

  private:
    bool reach_is_safe() const;

    const SafeContext& ctx_;
    bool grow_;
    StackPool pool_;
    ConfigSet reach_;
    std::vector<std::pair<Letter, ConfigFamily>> frames_;
    bool completed_ = false;
    bool accepted_ = false;
};

StreamResult stream_check_safe(const SafeContext& ctx, std::span<const Event> events,
                               bool use_grow = false);
StreamResult stream_check_safe(const Vpa& a, std::span<const Event> events, bool use_grow = false);

}  // namespace tvu
