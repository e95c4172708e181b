// hedge_uuniv.hh -- incremental u-universality of hedge automata via
// Y-sets of relations over the precomputed macrostate monoid

#pragma once

#include <memory>

#include "tvu/bits.hh"
#include "tvu/macro_universality.hh"
#include "tvu/stream_result.hh"

namespace tvu {

/// Everything that depends only on the automaton: the macrostate
/// fixpoint Π, the full relation monoid rel(Π*), its minimal and maximal
/// antichains, and lookup tables for Post. Immutable once built; safe to
/// share across concurrent streams.
struct PiMonoid {
    HedgeAutomaton automaton;
    HorizontalSpace space;
    std::vector<Macrostate> pi;
    RelationMonoid rels;
    ProvenanceMap provenance;
    std::vector<uint32_t> rels_min;
    std::vector<uint32_t> rels_max;
    std::vector<uint32_t> popcount_desc;           // linear extension: supersets first
    std::vector<std::vector<Macrostate>> post_of;  // [letter][rel] = Post_a(rel)
    std::vector<std::vector<uint32_t>> relof_post; // [letter][rel] = index of rel(Post_a(rel))
    Macrostate qf = 0;
    uint32_t id_index = 0;

    explicit PiMonoid(const HedgeAutomaton& h);
    size_t nrels() const { return rels.size(); }
};

PiMonoid precompute(const HedgeAutomaton& h);

enum class StreamUpshot : uint8_t { Continue, UUniversal };

/// One in-flight stream. Frames mirror the paper's stack of
/// (Y, accumulated relation, open letter) triples; in the antichain
/// variant each frame stores the maximal antichain of Y instead.
///
/// The four tag functions keep updating frames even after a verdict
/// fired, so a stream can be driven to its final membership answer; Y
/// sets are then empty and every later verdict stays UUniversal.
class UUnivStream {
  public:
    UUnivStream(const PiMonoid& s, bool antichain);

    StreamUpshot open_root(Letter a);
    StreamUpshot next_open_tag(Letter a);
    /// Algorithm-6 style computation of the maximal antichain of Y;
    /// requires antichain mode.
    StreamUpshot opt_next_open_tag(Letter a);
    /// Throws StackUnderflow when depth < 2 (that close belongs to
    /// close_root); NotWellBalanced when the letter mismatches.
    StreamUpshot next_closed_tag(Letter a);
    /// Final membership verdict; requires depth == 1.
    bool close_root(Letter a);

    size_t depth() const { return frames_.size(); }
    Letter top_letter() const;
    bool top_y_empty() const;
    /// Semantic membership of a monoid element in the top Y set (via the
    /// maximal antichain in antichain mode).
    bool top_y_contains(uint32_t rel_index) const;
    /// The maximal antichain of the top Y set (antichain mode only).
    const std::vector<uint32_t>& top_y_max() const;
    /// Some relation currently in Y (smallest index / first maximal);
    /// used by tests to materialize witness hedges.
    std::optional<uint32_t> top_y_member() const;

  private:
    struct Frame {
        Bits y;                       // full variant
        std::vector<uint32_t> y_max;  // antichain variant
        uint32_t r;
        Letter a;
    };

    uint32_t compose_idx(uint32_t i, uint32_t j);
    uint32_t relof_post_idx(Letter a, uint32_t r) const;
    bool pref_member(const Frame& parent, uint32_t x);  // ∃s: x∘s ∈ Y'
    Frame make_frame(Letter a, Bits y, std::vector<uint32_t> y_max) const;

    const PiMonoid& s_;
    bool antichain_;
    std::vector<Frame> frames_;
    std::unordered_map<uint64_t, uint32_t> compose_cache_;
};

StreamResult stream_check_hedge(const PiMonoid& s, std::span<const Event> events, bool antichain);
StreamResult stream_check_hedge(const HedgeAutomaton& h, std::span<const Event> events,
                                bool antichain);

}  // namespace tvu
