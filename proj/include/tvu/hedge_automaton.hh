// hedge_automaton.hh -- hedge automata with regular horizontal languages

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tvu/bits.hh"
#include "tvu/trees.hh"

namespace tvu {

/// A hedge automaton state index. The whole automaton is capped at 64
/// states so that macrostates fit in one word.
using HState = uint32_t;

/// Macrostate: a set of hedge-automaton states, as a bitmask over Q.
using Macrostate = uint64_t;

struct HTransition {
    uint32_t src;
    HState via;  // the letter of a horizontal NFA is a hedge-automaton state
    uint32_t dst;

    auto operator<=>(const HTransition&) const = default;
};

/// Epsilon-free word automaton over the hedge automaton's states.
/// Whether the empty word belongs to the language is cached in
/// `accepts_empty`, which always equals `initial ∩ final ≠ ∅`.
struct HorizontalNfa {
    uint32_t num_states = 0;
    std::vector<uint32_t> initial;          // sorted
    std::vector<uint32_t> final;            // sorted
    std::vector<HTransition> transitions;   // sorted, unique
    bool accepts_empty = false;

    bool member(std::span<const HState> word) const;
    /// Disjoint union; languages union.
    void merge_union(const HorizontalNfa& other);
    void normalize();  // sort, dedupe, refresh accepts_empty
};

/// Parses a regex over state names into an epsilon-free NFA.
/// Syntax: juxtaposition = concatenation, `|`, `*`, `+`, `?`, `()`,
/// keyword `eps` for the empty word.
/// Throws ParseError on bad syntax, UnknownState on undeclared names.
HorizontalNfa compile_horizontal(std::string_view regex,
                                 const std::vector<std::string>& state_names);

struct HedgeRule {
    Letter letter;
    HState target;
    HorizontalNfa lang;
};

class HedgeAutomaton {
  public:
    HedgeAutomaton() = default;
    /// Merges duplicate (letter, target) rules by NFA union and
    /// validates all invariants (≤ 64 states, endpoints in range).
    HedgeAutomaton(Alphabet alphabet, std::vector<std::string> states,
                   std::vector<HState> final_states, std::vector<HedgeRule> rules);

    const Alphabet& alphabet() const { return alphabet_; }
    size_t num_states() const { return states_.size(); }
    const std::vector<std::string>& state_names() const { return states_; }
    const std::string& state_name(HState q) const { return states_[q]; }
    Macrostate final_mask() const { return final_mask_; }
    const std::vector<HedgeRule>& rules() const { return rules_; }

    /// States reachable at the root over all runs, bottom-up.
    Macrostate macrostate_of(const Tree& t) const;
    bool accepts(const Tree& t) const;

  private:
    Alphabet alphabet_;
    std::vector<std::string> states_;
    Macrostate final_mask_ = 0;
    std::vector<HedgeRule> rules_;  // sorted by (letter, target), unique
};

/// Regex rendering of an NFA (state elimination); used when writing
/// hedge automaton files. Returns "" for the empty language.
std::string nfa_to_regex(const HorizontalNfa& nfa,
                         const std::vector<std::string>& state_names);

}  // namespace tvu
