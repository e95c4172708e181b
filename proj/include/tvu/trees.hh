// trees.hh -- unranked trees, hedges, linearizations and streaming events

#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tvu/error.hh"

namespace tvu {

using Letter = uint32_t;

/// Finite ordered alphabet of tag names.
///
/// Names must be non-empty, unique, free of whitespace and of the
/// characters reserved by the text formats (`/` prefix, `#`, regex
/// metacharacters), and must not be the keyword `eps`.
class Alphabet {
  public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    size_t size() const { return names_.size(); }
    const std::string& name(Letter l) const { return names_[l]; }
    const std::vector<std::string>& names() const { return names_; }
    std::optional<Letter> find(std::string_view name) const;
    /// Like find() but throws ParseError when the name is unknown.
    Letter require(std::string_view name) const;
    bool operator==(const Alphabet& o) const { return names_ == o.names_; }

    /// Validates a single identifier against the naming rules above.
    static void check_name(std::string_view name, const char* what);

  private:
    std::vector<std::string> names_;
    std::map<std::string, Letter, std::less<>> index_;
};

struct Tree {
    Letter label = 0;
    std::vector<Tree> children;

    bool operator==(const Tree&) const = default;
    size_t node_count() const;
    size_t height() const;
};

/// A hedge is a (possibly empty) sequence of trees.
using Hedge = std::vector<Tree>;

enum class Kind : uint8_t { Open, Close };

struct Event {
    Kind kind;
    Letter letter;

    bool operator==(const Event&) const = default;
};

/// Token order used for the deterministic size-lexicographic tree
/// enumeration: closing tags sort before opening tags, ties by letter.
int event_rank_compare(Event a, Event b);

std::vector<Event> linearize(const Tree& t);
std::vector<Event> linearize(const Hedge& h);
void linearize_into(const Tree& t, std::vector<Event>& out);

/// Inverse of linearize. Throws NotWellBalanced on premature or
/// mismatched closes, leftover opens, multiple roots, or empty input.
Tree tree_from_events(std::span<const Event> events);

/// Unmatched open letters of a proper prefix, bottom-up.
/// Throws NotAPrefix when `u` is complete or not a prefix at all.
std::vector<Letter> open_of_prefix(std::span<const Event> u);

/// Incremental tracker for proper prefixes of linearizations.
/// feed() refuses events that would complete the word or unbalance it,
/// keeping the invariant that a non-empty prefix has open tags left.
class Prefix {
  public:
    void feed(Event e);
    const std::vector<Event>& events() const { return events_; }
    const std::vector<Letter>& open_stack() const { return open_; }
    size_t depth() const { return open_.size(); }

  private:
    std::vector<Event> events_;
    std::vector<Letter> open_;
};

/// Streams every tree over the alphabet with at most `max_nodes`
/// nodes, exactly once, ordered by node count and then
/// lexicographically on the linearization.
class TreeEnumerator {
  public:
    TreeEnumerator(Alphabet alphabet, size_t max_nodes);
    std::optional<Tree> next();

  private:
    const std::vector<Tree>& trees_of(size_t n);
    const std::vector<Hedge>& hedges_of(size_t n);

    Alphabet alphabet_;
    size_t max_nodes_;
    size_t size_ = 1;
    size_t pos_ = 0;
    std::vector<std::vector<Tree>> trees_;
    std::vector<std::vector<Hedge>> hedges_;
};

/// Convenience: materializes the whole enumeration.
std::vector<Tree> enumerate_trees(const Alphabet& alphabet, size_t max_nodes);

/// Uniformly shaped random tree with 1..max_nodes nodes (random
/// recursive attachment, uniform labels).
Tree random_tree(std::mt19937_64& rng, const Alphabet& alphabet, int max_nodes);

// Stream text format: whitespace-separated tokens, `x` opens and `/x`
// closes tag x, `#` starts a comment running to end of line.
std::vector<Event> parse_stream_text(std::string_view text, const Alphabet& alphabet);
std::string print_stream_text(std::span<const Event> events, const Alphabet& alphabet);
std::string event_token(Event e, const Alphabet& alphabet);

}  // namespace tvu
