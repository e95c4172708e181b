// vpa.hh -- visibly pushdown automata as unranked-tree acceptors

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tvu/hedge_automaton.hh"
#include "tvu/trees.hh"

namespace tvu {

using VState = uint32_t;
using StackSym = uint32_t;

struct VpaRule {
    VState src;
    Letter letter;
    StackSym sym;
    VState dst;

    auto operator<=>(const VpaRule&) const = default;
};

/// Call rules push their symbol on the open tag, return rules pop it on
/// the matching close tag; there are no internal symbols. Acceptance is
/// a final state on the empty stack after a full linearization.
class Vpa {
  public:
    Vpa() = default;
    Vpa(Alphabet alphabet, std::vector<std::string> states, std::vector<std::string> stack_syms,
        std::vector<VState> initial, std::vector<VState> final, std::vector<VpaRule> calls,
        std::vector<VpaRule> rets);

    const Alphabet& alphabet() const { return alphabet_; }
    size_t num_states() const { return states_.size(); }
    size_t num_stack_syms() const { return stack_names_.size(); }
    const std::vector<std::string>& state_names() const { return states_; }
    const std::vector<std::string>& stack_names() const { return stack_names_; }
    const std::vector<VState>& initial() const { return initial_; }
    const std::vector<VState>& final() const { return final_; }
    const std::vector<VpaRule>& calls() const { return calls_; }
    const std::vector<VpaRule>& rets() const { return rets_; }
    bool is_final(VState q) const;
    bool is_initial(VState q) const;

    bool is_deterministic() const;
    bool is_complete() const;

    std::span<const VpaRule> calls_from(VState q, Letter a) const;
    std::span<const VpaRule> rets_from(VState q, Letter a, StackSym g) const;

  private:
    Alphabet alphabet_;
    std::vector<std::string> states_;
    std::vector<std::string> stack_names_;
    std::vector<VState> initial_;  // sorted
    std::vector<VState> final_;    // sorted
    std::vector<VpaRule> calls_;   // sorted by (src, letter, sym, dst)
    std::vector<VpaRule> rets_;    // sorted by (src, letter, sym, dst)
};

/// Interned stacks with shared tails; id 0 is the empty stack.
class StackPool {
  public:
    static constexpr uint32_t empty = 0;

    StackPool() { nodes_.push_back({UINT32_MAX, UINT32_MAX}); depth_.push_back(0); }

    uint32_t push(StackSym sym, uint32_t below);
    StackSym top(uint32_t id) const { return nodes_[id].first; }
    uint32_t pop(uint32_t id) const { return nodes_[id].second; }
    uint32_t depth(uint32_t id) const { return depth_[id]; }
    /// Symbols from top to bottom.
    std::vector<StackSym> symbols(uint32_t id) const;

  private:
    std::vector<std::pair<StackSym, uint32_t>> nodes_;  // (top symbol, rest)
    std::vector<uint32_t> depth_;
    std::unordered_map<uint64_t, uint32_t> intern_;
};

struct Config {
    VState state;
    uint32_t stack;

    auto operator<=>(const Config&) const = default;
};

/// Sorted, duplicate-free set of configurations.
using ConfigSet = std::vector<Config>;

ConfigSet initial_configs(const Vpa& a);
ConfigSet post_event(const Vpa& a, const ConfigSet& c, Event e, StackPool& pool);
bool accepts_events(const Vpa& a, std::span<const Event> events);
bool accepts(const Vpa& a, const Tree& t);

/// Seeded random VPA: sizes uniform in [1..max], every candidate rule
/// kept with probability 1/2, at least one initial state.
Vpa random_vpa(uint64_t seed, int max_states, int max_letters, int max_stack);

/// Theorem-2 style translation: hedge automaton over state pairs whose
/// language of trees equals the VPA's. Requires |Q|^2 <= 64.
HedgeAutomaton translate_to_hedge(const Vpa& a);

/// Deterministic complete VPA with the same tree language (summary
/// construction; states are hedge relations over Q). Requires |Q| <= 64.
Vpa determinize(const Vpa& a);

/// Flips final states. Throws NotDeterministic unless the input is
/// deterministic and complete.
Vpa complement_deterministic(const Vpa& a);

struct EmptinessResult {
    bool empty;
    std::optional<Tree> witness;  // accepted tree when non-empty
};

EmptinessResult is_empty(const Vpa& a);

}  // namespace tvu
