#include "tvu/hedge_automaton.hh"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>

#include "tvu/error.hh"

namespace tvu {

// --- HorizontalNfa --------------------------------------------------------

void HorizontalNfa::normalize() {
    std::sort(initial.begin(), initial.end());
    initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
    std::sort(final.begin(), final.end());
    final.erase(std::unique(final.begin(), final.end()), final.end());
    std::sort(transitions.begin(), transitions.end());
    transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
    accepts_empty = false;
    for (uint32_t i : initial)
        if (std::binary_search(final.begin(), final.end(), i)) { accepts_empty = true; break; }
}

bool HorizontalNfa::member(std::span<const HState> word) const {
    if (word.empty()) return accepts_empty;
    Bits cur(num_states);
    for (uint32_t i : initial) cur.set(i);
    for (HState q : word) {
        Bits nxt(num_states);
        bool alive = false;
        for (const HTransition& t : transitions)
            if (t.via == q && cur.test(t.src)) { nxt.set(t.dst); alive = true; }
        if (!alive) return false;
        cur = std::move(nxt);
    }
    for (uint32_t f : final)
        if (cur.test(f)) return true;
    return false;
}

void HorizontalNfa::merge_union(const HorizontalNfa& other) {
    uint32_t off = num_states;
    num_states += other.num_states;
    for (uint32_t i : other.initial) initial.push_back(i + off);
    for (uint32_t f : other.final) final.push_back(f + off);
    for (const HTransition& t : other.transitions)
        transitions.push_back({t.src + off, t.via, t.dst + off});
    normalize();
}

// --- regex compilation ----------------------------------------------------

namespace {

struct ReToken {
    enum Type { Ident, Eps, LPar, RPar, Bar, Star, Plus, Quest, End } type;
    std::string text;
};

std::vector<ReToken> lex_regex(std::string_view re) {
    std::vector<ReToken> out;
    size_t i = 0;
    while (i < re.size()) {
        char c = re[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        switch (c) {
            case '(': out.push_back({ReToken::LPar, "("}); ++i; continue;
            case ')': out.push_back({ReToken::RPar, ")"}); ++i; continue;
            case '|': out.push_back({ReToken::Bar, "|"}); ++i; continue;
            case '*': out.push_back({ReToken::Star, "*"}); ++i; continue;
            case '+': out.push_back({ReToken::Plus, "+"}); ++i; continue;
            case '?': out.push_back({ReToken::Quest, "?"}); ++i; continue;
            default: break;
        }
        size_t j = i;
        while (j < re.size() && !std::isspace(static_cast<unsigned char>(re[j])) &&
               std::string_view("()|*+?").find(re[j]) == std::string_view::npos)
            ++j;
        std::string word(re.substr(i, j - i));
        out.push_back(word == "eps" ? ReToken{ReToken::Eps, word} : ReToken{ReToken::Ident, word});
        i = j;
    }
    out.push_back({ReToken::End, ""});
    return out;
}

// Thompson construction with epsilon edges, then elimination.
struct ThompsonNfa {
    uint32_t n = 0;
    std::vector<std::pair<uint32_t, uint32_t>> eps;
    std::vector<HTransition> sym;
    uint32_t fresh() { return n++; }
};

struct Frag { uint32_t in, out; };

class ReParser {
  public:
    ReParser(std::vector<ReToken> toks, const std::vector<std::string>& names)
        : toks_(std::move(toks)), names_(names) {}

    Frag parse() {
        Frag f = alt();
        if (cur().type != ReToken::End) throw ParseError("unexpected '" + cur().text + "' in regex");
        return f;
    }

    ThompsonNfa nfa;

  private:
    const ReToken& cur() const { return toks_[pos_]; }
    void advance() { ++pos_; }

    Frag alt() {
        Frag f = cat();
        while (cur().type == ReToken::Bar) {
            advance();
            Frag g = cat();
            uint32_t in = nfa.fresh(), out = nfa.fresh();
            nfa.eps.push_back({in, f.in});
            nfa.eps.push_back({in, g.in});
            nfa.eps.push_back({f.out, out});
            nfa.eps.push_back({g.out, out});
            f = {in, out};
        }
        return f;
    }

    Frag cat() {
        Frag f = rep();
        while (cur().type == ReToken::Ident || cur().type == ReToken::Eps ||
               cur().type == ReToken::LPar) {
            Frag g = rep();
            nfa.eps.push_back({f.out, g.in});
            f = {f.in, g.out};
        }
        return f;
    }

    Frag rep() {
        Frag f = atom();
        for (;;) {
            if (cur().type == ReToken::Star) {
                advance();
                uint32_t in = nfa.fresh(), out = nfa.fresh();
                nfa.eps.push_back({in, f.in});
                nfa.eps.push_back({in, out});
                nfa.eps.push_back({f.out, f.in});
                nfa.eps.push_back({f.out, out});
                f = {in, out};
            } else if (cur().type == ReToken::Plus) {
                advance();
                uint32_t out = nfa.fresh();
                nfa.eps.push_back({f.out, f.in});
                nfa.eps.push_back({f.out, out});
                f = {f.in, out};
            } else if (cur().type == ReToken::Quest) {
                advance();
                uint32_t in = nfa.fresh(), out = nfa.fresh();
                nfa.eps.push_back({in, f.in});
                nfa.eps.push_back({in, out});
                nfa.eps.push_back({f.out, out});
                f = {in, out};
            } else {
                return f;
            }
        }
    }

    Frag atom() {
        switch (cur().type) {
            case ReToken::LPar: {
                advance();
                Frag f = alt();
                if (cur().type != ReToken::RPar) throw ParseError("missing ')' in regex");
                advance();
                return f;
            }
            case ReToken::Eps: {
                advance();
                uint32_t in = nfa.fresh(), out = nfa.fresh();
                nfa.eps.push_back({in, out});
                return {in, out};
            }
            case ReToken::Ident: {
                auto it = std::find(names_.begin(), names_.end(), cur().text);
                if (it == names_.end())
                    throw UnknownState("regex references unknown state '" + cur().text + "'");
                HState q = static_cast<HState>(it - names_.begin());
                advance();
                uint32_t in = nfa.fresh(), out = nfa.fresh();
                nfa.sym.push_back({in, q, out});
                return {in, out};
            }
            case ReToken::RPar: throw ParseError("unexpected ')' in regex");
            case ReToken::Bar: throw ParseError("unexpected '|' in regex");
            case ReToken::Star:
            case ReToken::Plus:
            case ReToken::Quest: throw ParseError("repetition operator with nothing to repeat");
            case ReToken::End: throw ParseError("empty regex (use 'eps' for the empty word)");
        }
        throw ParseError("regex parse error");
    }

    std::vector<ReToken> toks_;
    const std::vector<std::string>& names_;
    size_t pos_ = 0;
};

}  // namespace

HorizontalNfa compile_horizontal(std::string_view regex,
                                 const std::vector<std::string>& state_names) {
    ReParser parser(lex_regex(regex), state_names);
    Frag f = parser.parse();
    const ThompsonNfa& tn = parser.nfa;

    // Epsilon closures.
    std::vector<std::vector<uint32_t>> eps_adj(tn.n);
    for (auto [u, v] : tn.eps) eps_adj[u].push_back(v);
    auto closure = [&](uint32_t s) {
        Bits seen(tn.n);
        std::vector<uint32_t> stack{s}, out;
        seen.set(s);
        while (!stack.empty()) {
            uint32_t u = stack.back();
            stack.pop_back();
            out.push_back(u);
            for (uint32_t v : eps_adj[u])
                if (!seen.test(v)) { seen.set(v); stack.push_back(v); }
        }
        return out;
    };

    std::vector<Bits> closures;
    closures.reserve(tn.n);
    for (uint32_t s = 0; s < tn.n; ++s) {
        Bits b(tn.n);
        for (uint32_t v : closure(s)) b.set(v);
        closures.push_back(std::move(b));
    }

    // Eliminate epsilon: x --q--> v whenever x -eps*-> u --q--> v.
    std::vector<HTransition> trans;
    for (uint32_t x = 0; x < tn.n; ++x)
        for (const HTransition& t : tn.sym)
            if (closures[x].test(t.src)) trans.push_back({x, t.via, t.dst});
    std::vector<uint32_t> finals;
    for (uint32_t x = 0; x < tn.n; ++x)
        if (closures[x].test(f.out)) finals.push_back(x);

    // Trim to states reachable from the start and co-reachable to a final.
    Bits reach(tn.n);
    {
        std::vector<uint32_t> stack{f.in};
        reach.set(f.in);
        while (!stack.empty()) {
            uint32_t u = stack.back();
            stack.pop_back();
            for (const HTransition& t : trans)
                if (t.src == u && !reach.test(t.dst)) { reach.set(t.dst); stack.push_back(t.dst); }
        }
    }
    Bits coreach(tn.n);
    {
        std::vector<uint32_t> stack;
        for (uint32_t x : finals)
            if (!coreach.test(x)) { coreach.set(x); stack.push_back(x); }
        while (!stack.empty()) {
            uint32_t u = stack.back();
            stack.pop_back();
            for (const HTransition& t : trans)
                if (t.dst == u && !coreach.test(t.src)) { coreach.set(t.src); stack.push_back(t.src); }
        }
    }

    std::vector<uint32_t> remap(tn.n, UINT32_MAX);
    uint32_t next = 0;
    for (uint32_t x = 0; x < tn.n; ++x)
        if (reach.test(x) && coreach.test(x)) remap[x] = next++;

    HorizontalNfa out;
    out.num_states = next;
    if (remap[f.in] != UINT32_MAX) out.initial.push_back(remap[f.in]);
    for (uint32_t x : finals)
        if (remap[x] != UINT32_MAX) out.final.push_back(remap[x]);
    for (const HTransition& t : trans)
        if (remap[t.src] != UINT32_MAX && remap[t.dst] != UINT32_MAX)
            out.transitions.push_back({remap[t.src], t.via, remap[t.dst]});
    out.normalize();
    return out;
}

// --- HedgeAutomaton -------------------------------------------------------

HedgeAutomaton::HedgeAutomaton(Alphabet alphabet, std::vector<std::string> states,
                               std::vector<HState> final_states, std::vector<HedgeRule> rules)
    : alphabet_(std::move(alphabet)), states_(std::move(states)) {
    if (states_.empty()) throw ParseError("hedge automaton needs at least one state");
    if (states_.size() > 64)
        throw ParseError("hedge automaton limited to 64 states (got " +
                         std::to_string(states_.size()) + ")");
    std::set<std::string> seen;
    for (const auto& s : states_) {
        Alphabet::check_name(s, "state");
        if (!seen.insert(s).second) throw ParseError("duplicate state '" + s + "'");
    }
    for (HState q : final_states) {
        if (q >= states_.size()) throw ParseError("final state out of range");
        final_mask_ |= Macrostate{1} << q;
    }
    // Merge duplicate (letter, target) rules by unioning their languages.
    std::map<std::pair<Letter, HState>, HorizontalNfa> merged;
    for (HedgeRule& r : rules) {
        if (r.letter >= alphabet_.size()) throw ParseError("rule letter out of range");
        if (r.target >= states_.size()) throw ParseError("rule target out of range");
        for (const HTransition& t : r.lang.transitions)
            if (t.via >= states_.size()) throw ParseError("horizontal NFA letter out of range");
        auto key = std::make_pair(r.letter, r.target);
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, std::move(r.lang));
        else
            it->second.merge_union(r.lang);
    }
    for (auto& [key, lang] : merged) {
        lang.normalize();
        rules_.push_back({key.first, key.second, std::move(lang)});
    }
}

Macrostate HedgeAutomaton::macrostate_of(const Tree& t) const {
    std::vector<Macrostate> kids;
    kids.reserve(t.children.size());
    for (const Tree& c : t.children) kids.push_back(macrostate_of(c));

    Macrostate out = 0;
    for (const HedgeRule& r : rules_) {
        if (r.letter != t.label) continue;
        if (kids.empty()) {
            if (r.lang.accepts_empty) out |= Macrostate{1} << r.target;
            continue;
        }
        // Simulate the NFA over the macrostate word: a step may take any
        // state present in the child's macrostate as the letter.
        Bits cur(r.lang.num_states);
        for (uint32_t i : r.lang.initial) cur.set(i);
        bool alive = true;
        for (Macrostate p : kids) {
            Bits nxt(r.lang.num_states);
            bool any = false;
            for (const HTransition& tr : r.lang.transitions)
                if ((p >> tr.via) & 1 && cur.test(tr.src)) { nxt.set(tr.dst); any = true; }
            if (!any) { alive = false; break; }
            cur = std::move(nxt);
        }
        if (!alive) continue;
        for (uint32_t fst : r.lang.final)
            if (cur.test(fst)) { out |= Macrostate{1} << r.target; break; }
    }
    return out;
}

bool HedgeAutomaton::accepts(const Tree& t) const {
    return (macrostate_of(t) & final_mask_) != 0;
}

// --- NFA -> regex (state elimination) --------------------------------------

namespace {

// Tiny regex AST for printing; Empty is the empty language.
struct Re {
    enum Kind { Empty, Eps, Sym, Alt, Cat, Star } kind = Empty;
    HState sym = 0;
    std::vector<Re> sub;

    static Re empty() { return {}; }
    static Re eps() { Re r; r.kind = Eps; return r; }
    static Re symbol(HState q) { Re r; r.kind = Sym; r.sym = q; return r; }
};

Re re_alt(Re a, Re b) {
    if (a.kind == Re::Empty) return b;
    if (b.kind == Re::Empty) return a;
    if (a.kind == Re::Eps && b.kind == Re::Eps) return a;
    Re r;
    r.kind = Re::Alt;
    r.sub = {std::move(a), std::move(b)};
    return r;
}

Re re_cat(Re a, Re b) {
    if (a.kind == Re::Empty || b.kind == Re::Empty) return Re::empty();
    if (a.kind == Re::Eps) return b;
    if (b.kind == Re::Eps) return a;
    Re r;
    r.kind = Re::Cat;
    r.sub = {std::move(a), std::move(b)};
    return r;
}

Re re_star(Re a) {
    if (a.kind == Re::Empty || a.kind == Re::Eps) return Re::eps();
    if (a.kind == Re::Star) return a;
    Re r;
    r.kind = Re::Star;
    r.sub = {std::move(a)};
    return r;
}

void re_print(const Re& r, const std::vector<std::string>& names, std::string& out, int parent_prec) {
    // precedence: Alt=0 < Cat=1 < Star=2
    switch (r.kind) {
        case Re::Empty: out += "(empty)"; return;  // callers avoid this
        case Re::Eps: out += "eps"; return;
        case Re::Sym: out += names[r.sym]; return;
        case Re::Alt: {
            bool paren = parent_prec > 0;
            if (paren) out.push_back('(');
            re_print(r.sub[0], names, out, 0);
            out.push_back('|');
            re_print(r.sub[1], names, out, 0);
            if (paren) out.push_back(')');
            return;
        }
        case Re::Cat: {
            bool paren = parent_prec > 1;
            if (paren) out.push_back('(');
            re_print(r.sub[0], names, out, 1);
            out.push_back(' ');
            re_print(r.sub[1], names, out, 1);
            if (paren) out.push_back(')');
            return;
        }
        case Re::Star: {
            re_print(r.sub[0], names, out, 2);
            out.push_back('*');
            return;
        }
    }
}

}  // namespace

std::string nfa_to_regex(const HorizontalNfa& nfa, const std::vector<std::string>& state_names) {
    // GNFA with fresh start (n) and accept (n+1), edge matrix of regexes.
    uint32_t n = nfa.num_states;
    uint32_t start = n, accept = n + 1;
    std::vector<std::vector<Re>> edge(n + 2, std::vector<Re>(n + 2, Re::empty()));
    for (uint32_t i : nfa.initial) edge[start][i] = re_alt(edge[start][i], Re::eps());
    for (uint32_t f : nfa.final) edge[f][accept] = re_alt(edge[f][accept], Re::eps());
    if (nfa.accepts_empty) edge[start][accept] = Re::eps();
    for (const HTransition& t : nfa.transitions)
        edge[t.src][t.dst] = re_alt(std::move(edge[t.src][t.dst]), Re::symbol(t.via));

    for (uint32_t k = 0; k < n; ++k) {
        Re loop = re_star(edge[k][k]);
        for (uint32_t i = 0; i < n + 2; ++i) {
            if (i == k || edge[i][k].kind == Re::Empty) continue;
            for (uint32_t j = 0; j < n + 2; ++j) {
                if (j == k || edge[k][j].kind == Re::Empty) continue;
                Re path = re_cat(re_cat(edge[i][k], loop), edge[k][j]);
                edge[i][j] = re_alt(std::move(edge[i][j]), std::move(path));
            }
        }
        for (uint32_t i = 0; i < n + 2; ++i) {
            edge[i][k] = Re::empty();
            edge[k][i] = Re::empty();
        }
    }

    const Re& result = edge[start][accept];
    if (result.kind == Re::Empty) return "";
    std::string out;
    re_print(result, state_names, out, 0);
    return out;
}

}  // namespace tvu
