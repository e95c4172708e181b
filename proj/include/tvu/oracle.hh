// oracle.hh -- brute-force and determinization-based verification of the
// verdicts produced by the main algorithms

#pragma once

#include <functional>
#include <optional>
#include <string>

#include "tvu/hedge_automaton.hh"
#include "tvu/safe_configs.hh"
#include "tvu/stream_result.hh"
#include "tvu/vpa.hh"

namespace tvu::oracle {

struct OracleBudget {
    int max_nodes = 6;
    int max_continuation_nodes = 8;
    uint64_t seed = 1;
};

/// Smallest enumerated tree rejected by the acceptor, if any.
std::optional<Tree> bounded_nonuniversality_witness(
    const std::function<bool(const Tree&)>& accepts_tree, const Alphabet& alphabet,
    int max_nodes);
std::optional<Tree> bounded_nonuniversality_witness(const Vpa& a, int max_nodes);
std::optional<Tree> bounded_nonuniversality_witness(const HedgeAutomaton& h, int max_nodes);

/// A completion v such that prefix·v is a full linearization rejected by
/// the acceptor, using at most `budget` extra nodes; nullopt if none
/// exists within budget. The VPA variant searches over configuration
/// sets with memoization; the hedge variant enumerates completions.
std::optional<std::vector<Event>> bounded_uuniv_refutation(const Vpa& a,
                                                           std::span<const Event> prefix,
                                                           int budget);
std::optional<std::vector<Event>> bounded_uuniv_refutation(const HedgeAutomaton& h,
                                                           std::span<const Event> prefix,
                                                           int budget);

/// Same search, started from an explicit configuration set whose stacks
/// live in `pool` and whose unmatched open tags are `open_stack`.
std::optional<std::vector<Event>> bounded_uuniv_refutation_from(const Vpa& a,
                                                                const ConfigSet& from,
                                                                std::span<const Letter> open_stack,
                                                                int budget,
                                                                const StackPool& pool);

struct DetUniversalityResult {
    bool universal;
    std::optional<Tree> witness;  // rejected tree when not universal
};

/// Exact universality through determinize / complement / emptiness.
DetUniversalityResult det_universality(const Vpa& a);

/// Exact u-universality: the safe-configuration stream check run on the
/// determinized automaton.
bool det_uuniversality(const Vpa& a, std::span<const Event> prefix);
StreamResult stream_check_det(const Vpa& a, std::span<const Event> events);

// --- fuzzing -----------------------------------------------------------

struct FuzzOptions {
    uint64_t seed = 1;
    int count = 100;
    int max_states = 3;
    int max_letters = 2;
    int max_stack = 2;
    int max_tree_nodes = 10;
    int refutation_budget = 8;
    bool check_invariants = true;
    bool inject_fault = false;  // harness self-test: force one mismatch
};

struct FuzzFailure {
    uint64_t case_seed;
    std::string message;
    std::string automaton_text;
    std::string stream_text;
};

struct FuzzReport {
    int cases_run = 0;
    std::optional<FuzzFailure> failure;
    bool ok() const { return !failure.has_value(); }
};

/// Per-stream three-way agreement (hedge ∘ translate, safe, det) plus
/// certificate validation and the structural invariants.
FuzzReport fuzz_streams(const FuzzOptions& opts);

/// Universality agreement (plain = antichain = det pipeline) with
/// witness validation.
FuzzReport fuzz_universality(const FuzzOptions& opts);

}  // namespace tvu::oracle
