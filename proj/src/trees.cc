#include "tvu/trees.hh"

#include <algorithm>
#include <sstream>

namespace tvu {

static bool valid_name(std::string_view s) {
    if (s.empty() || s == "eps") return false;
    if (s.front() == '/' || s.front() == '#') return false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
        if (c == '(' || c == ')' || c == '|' || c == '*' || c == '+' || c == '?') return false;
    }
    return true;
}

void Alphabet::check_name(std::string_view name, const char* what) {
    if (!valid_name(name))
        throw ParseError(std::string(what) + " name '" + std::string(name) + "' is not a valid identifier");
}

Alphabet::Alphabet(std::vector<std::string> letters) : names_(std::move(letters)) {
    if (names_.empty()) throw ParseError("alphabet must be non-empty");
    for (Letter i = 0; i < names_.size(); ++i) {
        check_name(names_[i], "letter");
        if (!index_.emplace(names_[i], i).second)
            throw ParseError("duplicate letter '" + names_[i] + "'");
    }
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Letter Alphabet::require(std::string_view name) const {
    auto l = find(name);
    if (!l) throw ParseError("unknown letter '" + std::string(name) + "'");
    return *l;
}

size_t Tree::node_count() const {
    size_t n = 1;
    for (const Tree& c : children) n += c.node_count();
    return n;
}

size_t Tree::height() const {
    size_t h = 0;
    for (const Tree& c : children) h = std::max(h, c.height());
    return h + 1;
}

int event_rank_compare(Event a, Event b) {
    // Close < Open, then by letter.
    int ka = a.kind == Kind::Close ? 0 : 1;
    int kb = b.kind == Kind::Close ? 0 : 1;
    if (ka != kb) return ka < kb ? -1 : 1;
    if (a.letter != b.letter) return a.letter < b.letter ? -1 : 1;
    return 0;
}

void linearize_into(const Tree& t, std::vector<Event>& out) {
    out.push_back({Kind::Open, t.label});
    for (const Tree& c : t.children) linearize_into(c, out);
    out.push_back({Kind::Close, t.label});
}

std::vector<Event> linearize(const Tree& t) {
    std::vector<Event> out;
    out.reserve(2 * t.node_count());
    linearize_into(t, out);
    return out;
}

std::vector<Event> linearize(const Hedge& h) {
    std::vector<Event> out;
    for (const Tree& t : h) linearize_into(t, out);
    return out;
}

Tree tree_from_events(std::span<const Event> events) {
    if (events.empty()) throw NotWellBalanced("empty event sequence");
    std::vector<Tree> stack;   // open nodes, root at index 0
    std::optional<Tree> root;
    for (size_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        if (root)
            throw NotWellBalanced("events continue after the root was closed (token " +
                                  std::to_string(i + 1) + ")");
        if (e.kind == Kind::Open) {
            stack.push_back(Tree{e.letter, {}});
        } else {
            if (stack.empty())
                throw NotWellBalanced("close without matching open (token " + std::to_string(i + 1) + ")");
            if (stack.back().label != e.letter)
                throw NotWellBalanced("mismatched close (token " + std::to_string(i + 1) + ")");
            Tree done = std::move(stack.back());
            stack.pop_back();
            if (stack.empty())
                root = std::move(done);
            else
                stack.back().children.push_back(std::move(done));
        }
    }
    if (!root) throw NotWellBalanced("unclosed tags at end of input");
    return std::move(*root);
}

void Prefix::feed(Event e) {
    if (e.kind == Kind::Open) {
        open_.push_back(e.letter);
    } else {
        if (open_.empty())
            throw NotAPrefix("close without matching open");
        if (open_.back() != e.letter)
            throw NotAPrefix("mismatched close tag");
        if (open_.size() == 1)
            throw NotAPrefix("closing the root completes the linearization; not a proper prefix");
        open_.pop_back();
    }
    events_.push_back(e);
}

std::vector<Letter> open_of_prefix(std::span<const Event> u) {
    Prefix p;
    for (const Event& e : u) p.feed(e);
    return p.open_stack();
}

// --- enumeration ---------------------------------------------------------

TreeEnumerator::TreeEnumerator(Alphabet alphabet, size_t max_nodes)
    : alphabet_(std::move(alphabet)), max_nodes_(max_nodes) {
    trees_.resize(max_nodes_ + 1);
    hedges_.resize(max_nodes_ + 1);
    hedges_[0] = {Hedge{}};
}

const std::vector<Hedge>& TreeEnumerator::hedges_of(size_t n) {
    if (n == 0 || !hedges_[n].empty()) return hedges_[n];
    std::vector<Hedge> out;
    for (size_t first = 1; first <= n; ++first) {
        const auto& heads = trees_of(first);
        const auto& tails = hedges_of(n - first);
        for (const Tree& t : heads)
            for (const Hedge& rest : tails) {
                Hedge h;
                h.reserve(rest.size() + 1);
                h.push_back(t);
                h.insert(h.end(), rest.begin(), rest.end());
                out.push_back(std::move(h));
            }
    }
    hedges_[n] = std::move(out);
    return hedges_[n];
}

const std::vector<Tree>& TreeEnumerator::trees_of(size_t n) {
    if (!trees_[n].empty() || n == 0) return trees_[n];
    std::vector<Tree> out;
    for (Letter a = 0; a < alphabet_.size(); ++a)
        for (const Hedge& h : hedges_of(n - 1))
            out.push_back(Tree{a, h});
    // Order by linearization under the Close-before-Open token ranking.
    std::vector<std::pair<std::vector<Event>, size_t>> keyed;
    keyed.reserve(out.size());
    for (size_t i = 0; i < out.size(); ++i) keyed.emplace_back(linearize(out[i]), i);
    std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
        const auto& a = x.first;
        const auto& b = y.first;
        for (size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
            int c = event_rank_compare(a[i], b[i]);
            if (c != 0) return c < 0;
        }
        return a.size() < b.size();
    });
    std::vector<Tree> sorted;
    sorted.reserve(out.size());
    for (auto& [key, i] : keyed) sorted.push_back(std::move(out[i]));
    trees_[n] = std::move(sorted);
    return trees_[n];
}

std::optional<Tree> TreeEnumerator::next() {
    while (size_ <= max_nodes_) {
        const auto& bucket = trees_of(size_);
        if (pos_ < bucket.size()) return bucket[pos_++];
        ++size_;
        pos_ = 0;
    }
    return std::nullopt;
}

std::vector<Tree> enumerate_trees(const Alphabet& alphabet, size_t max_nodes) {
    TreeEnumerator en(alphabet, max_nodes);
    std::vector<Tree> out;
    while (auto t = en.next()) out.push_back(std::move(*t));
    return out;
}

Tree random_tree(std::mt19937_64& rng, const Alphabet& alphabet, int max_nodes) {
    std::uniform_int_distribution<int> size_dist(1, max_nodes);
    int n = size_dist(rng);
    std::uniform_int_distribution<Letter> label(0, static_cast<Letter>(alphabet.size() - 1));
    std::vector<Tree> nodes(static_cast<size_t>(n));
    std::vector<std::vector<size_t>> kids(static_cast<size_t>(n));
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> parent(0, i - 1);
        kids[static_cast<size_t>(parent(rng))].push_back(static_cast<size_t>(i));
    }
    for (int i = n - 1; i >= 0; --i) {
        nodes[static_cast<size_t>(i)].label = label(rng);
        for (size_t c : kids[static_cast<size_t>(i)])
            nodes[static_cast<size_t>(i)].children.push_back(std::move(nodes[c]));
    }
    return std::move(nodes[0]);
}

// --- stream text ----------------------------------------------------------

std::vector<Event> parse_stream_text(std::string_view text, const Alphabet& alphabet) {
    std::vector<Event> out;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
        if (text[i] == '#') {
            while (i < n && text[i] != '\n') ++i;
            continue;
        }
        size_t j = i;
        while (j < n && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::string_view tok = text.substr(i, j - i);
        i = j;
        if (tok.front() == '/') {
            if (tok.size() == 1) throw ParseError("bare '/' token in stream");
            out.push_back({Kind::Close, alphabet.require(tok.substr(1))});
        } else {
            out.push_back({Kind::Open, alphabet.require(tok)});
        }
    }
    return out;
}

std::string event_token(Event e, const Alphabet& alphabet) {
    std::string s;
    if (e.kind == Kind::Close) s.push_back('/');
    s += alphabet.name(e.letter);
    return s;
}

std::string print_stream_text(std::span<const Event> events, const Alphabet& alphabet) {
    std::string s;
    for (size_t i = 0; i < events.size(); ++i) {
        if (i) s.push_back(' ');
        s += event_token(events[i], alphabet);
    }
    return s;
}

}  // namespace tvu
