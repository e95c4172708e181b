#include "tvu/oracle.hh"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "tvu/error.hh"
#include "tvu/files.hh"
#include "tvu/hedge_functions.hh"
#include "tvu/hedge_uuniv.hh"
#include "tvu/macro_universality.hh"

namespace tvu::oracle {

std::optional<Tree> bounded_nonuniversality_witness(
    const std::function<bool(const Tree&)>& accepts_tree, const Alphabet& alphabet,
    int max_nodes) {
    TreeEnumerator en(alphabet, static_cast<size_t>(max_nodes));
    while (auto t = en.next())
        if (!accepts_tree(*t)) return t;
    return std::nullopt;
}

std::optional<Tree> bounded_nonuniversality_witness(const Vpa& a, int max_nodes) {
    return bounded_nonuniversality_witness([&](const Tree& t) { return accepts(a, t); },
                                           a.alphabet(), max_nodes);
}

std::optional<Tree> bounded_nonuniversality_witness(const HedgeAutomaton& h, int max_nodes) {
    return bounded_nonuniversality_witness([&](const Tree& t) { return h.accepts(t); },
                                           h.alphabet(), max_nodes);
}

namespace {

// Depth-first search over completions, on configuration sets. The key
// (configs, pending letters) repeats often across branches, so failed
// explorations are memoized together with the budget they covered.
struct VpaRefuter {
    const Vpa& a;
    StackPool pool;

    VpaRefuter(const Vpa& vpa, StackPool p) : a(vpa), pool(std::move(p)) {}
    std::map<ConfigSet, uint32_t> ids;
    std::map<std::pair<uint32_t, std::vector<Letter>>, int> no_refutation_upto;
    std::vector<Event> path;

    explicit VpaRefuter(const Vpa& vpa) : a(vpa) {}

    uint32_t intern(const ConfigSet& c) {
        auto [it, fresh] = ids.emplace(c, static_cast<uint32_t>(ids.size()));
        return it->second;
    }

    bool dfs(const ConfigSet& c, std::vector<Letter>& stack, int budget) {
        if (stack.empty()) {
            for (const Config& cf : c)
                if (cf.stack == StackPool::empty && a.is_final(cf.state)) return false;
            return true;  // completed linearization rejected
        }
        auto key = std::make_pair(intern(c), stack);
        if (auto it = no_refutation_upto.find(key);
            it != no_refutation_upto.end() && it->second >= budget)
            return false;

        Event close{Kind::Close, stack.back()};
        ConfigSet after = post_event(a, c, close, pool);
        Letter closed = stack.back();
        stack.pop_back();
        path.push_back(close);
        if (dfs(after, stack, budget)) return true;
        path.pop_back();
        stack.push_back(closed);

        if (budget > 0) {
            for (Letter x = 0; x < a.alphabet().size(); ++x) {
                Event open{Kind::Open, x};
                ConfigSet next = post_event(a, c, open, pool);
                stack.push_back(x);
                path.push_back(open);
                if (dfs(next, stack, budget - 1)) return true;
                path.pop_back();
                stack.pop_back();
            }
        }
        auto [it, fresh] = no_refutation_upto.emplace(key, budget);
        if (!fresh && it->second < budget) it->second = budget;
        return false;
    }
};

}  // namespace

std::optional<std::vector<Event>> bounded_uuniv_refutation(const Vpa& a,
                                                           std::span<const Event> prefix,
                                                           int budget) {
    if (prefix.empty()) throw NotAPrefix("refutation requires a non-empty proper prefix");
    std::vector<Letter> open;
    {
        Prefix p;
        for (const Event& e : prefix) p.feed(e);
        open = p.open_stack();
    }
    VpaRefuter search(a);
    ConfigSet c = initial_configs(a);
    for (const Event& e : prefix) c = post_event(a, c, e, search.pool);
    if (search.dfs(c, open, budget)) return search.path;
    return std::nullopt;
}

std::optional<std::vector<Event>> bounded_uuniv_refutation_from(const Vpa& a,
                                                                const ConfigSet& from,
                                                                std::span<const Letter> open_stack,
                                                                int budget,
                                                                const StackPool& pool) {
    VpaRefuter search(a, pool);
    std::vector<Letter> open(open_stack.begin(), open_stack.end());
    if (search.dfs(from, open, budget)) return search.path;
    return std::nullopt;
}

namespace {

struct HedgeRefuter {
    const HedgeAutomaton& h;
    std::vector<Event> all;  // prefix followed by the completion so far
    size_t prefix_len;

    bool dfs(std::vector<Letter>& stack, int budget) {
        if (stack.empty()) {
            Tree t = tree_from_events(all);
            return !h.accepts(t);
        }
        Letter closed = stack.back();
        all.push_back({Kind::Close, closed});
        stack.pop_back();
        if (dfs(stack, budget)) return true;
        stack.push_back(closed);
        all.pop_back();
        if (budget > 0) {
            for (Letter x = 0; x < h.alphabet().size(); ++x) {
                all.push_back({Kind::Open, x});
                stack.push_back(x);
                if (dfs(stack, budget - 1)) return true;
                stack.pop_back();
                all.pop_back();
            }
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<Event>> bounded_uuniv_refutation(const HedgeAutomaton& h,
                                                           std::span<const Event> prefix,
                                                           int budget) {
    if (prefix.empty()) throw NotAPrefix("refutation requires a non-empty proper prefix");
    std::vector<Letter> open;
    {
        Prefix p;
        for (const Event& e : prefix) p.feed(e);
        open = p.open_stack();
    }
    HedgeRefuter search{h, {prefix.begin(), prefix.end()}, prefix.size()};
    if (search.dfs(open, budget))
        return std::vector<Event>(search.all.begin() + static_cast<long>(prefix.size()),
                                  search.all.end());
    return std::nullopt;
}

DetUniversalityResult det_universality(const Vpa& a) {
    Vpa det = determinize(a);
    Vpa comp = complement_deterministic(det);
    EmptinessResult empt = is_empty(comp);
    if (empt.empty) return {true, std::nullopt};
    return {false, empt.witness};
}

StreamResult stream_check_det(const Vpa& a, std::span<const Event> events) {
    SafeContext ctx(determinize(a));
    return stream_check_safe(ctx, events);
}

bool det_uuniversality(const Vpa& a, std::span<const Event> prefix) {
    if (prefix.empty()) throw NotAPrefix("u-universality requires a non-empty prefix");
    StreamResult r = stream_check_det(a, prefix);
    return r.verdicts.back() == TokenVerdict::Univ;
}

// --- fuzzing ----------------------------------------------------------

namespace {

uint64_t mix_seed(uint64_t seed, uint64_t i) {
    uint64_t z = seed + 0x9e3779b97f4a7c15ull * (i + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::string verdict_string(const StreamResult& r) {
    std::string s;
    for (TokenVerdict v : r.verdicts) s += v == TokenVerdict::Univ ? 'U' : '.';
    s += " / ";
    switch (r.outcome) {
        case StreamOutcome::Accepted: s += "ACCEPT"; break;
        case StreamOutcome::Rejected: s += "REJECT"; break;
        case StreamOutcome::Undetermined: s += "UNDETERMINED"; break;
    }
    return s;
}

// Structural checks shared by the fuzz harnesses. Throws Error with a
// description when an invariant is violated.
void check_stream_invariants(const Vpa& a, const HedgeAutomaton& h, const PiMonoid& pi,
                             const SafeContext& ctx, std::span<const Event> events) {
    // Frame-depth and antichain invariants along the safe-method run.
    SafeStream st(ctx);
    size_t depth = 0;
    for (const Event& e : events) {
        st.feed(e);
        depth += e.kind == Kind::Open ? 1 : static_cast<size_t>(-1);
        if (!st.completed() && st.depth() != depth)
            throw Error("frame-stack depth diverged from |open(u)|");
        if (st.completed()) continue;
        const ConfigFamily& fam = st.top_family();
        for (size_t i = 0; i < fam.size(); ++i) {
            for (const Config& c : fam[i])
                if (st.pool().depth(c.stack) != depth)
                    throw Error("antichain member stack depth != |open(u)|");
            for (size_t j = 0; j < fam.size(); ++j)
                if (i != j && config_subset(fam[i], fam[j]))
                    throw Error("antichain contains comparable elements");
        }
        for (const Config& c : st.reach())
            if (st.pool().depth(c.stack) != depth)
                throw Error("reach-set stack depth != |open(u)|");
    }

    // Hedge-method frame depth.
    UUnivStream us(pi, /*antichain=*/false);
    size_t hdepth = 0;
    bool done = false;
    for (const Event& e : events) {
        if (done) throw Error("events after completed stream");
        if (e.kind == Kind::Open) {
            if (hdepth == 0)
                us.open_root(e.letter);
            else
                us.next_open_tag(e.letter);
            ++hdepth;
        } else if (hdepth == 1) {
            us.close_root(e.letter);
            --hdepth;
            done = true;
        } else {
            us.next_closed_tag(e.letter);
            --hdepth;
        }
        if (!done && us.depth() != hdepth) throw Error("u-universality stack depth mismatch");
    }

    // Relation monoid closed under composition (Algorithm 3 output).
    const size_t nrels = pi.nrels();
    if (nrels <= 64) {
        for (size_t i = 0; i < nrels; ++i)
            for (size_t j = 0; j < nrels; ++j)
                if (!pi.rels.contains(pi.space.compose(pi.rels.elems[i], pi.rels.elems[j])))
                    throw Error("relation monoid not closed under composition");
    } else {
        std::mt19937_64 rng(12345);
        std::uniform_int_distribution<size_t> pick(0, nrels - 1);
        for (int k = 0; k < 2000; ++k)
            if (!pi.rels.contains(
                    pi.space.compose(pi.rels.elems[pick(rng)], pi.rels.elems[pick(rng)])))
                throw Error("relation monoid not closed under composition");
    }

    // Hedge-function set closed under its generators (Algorithm 7 output),
    // and within the |Q|·2^|Q| bound.
    HedgeFnSet fns = hedge_functions(a);
    double bound = static_cast<double>(a.num_states()) *
                   std::pow(2.0, static_cast<double>(a.num_states()));
    if (static_cast<double>(fns.size()) > bound)
        throw Error("|Functions| exceeds |Q|*2^|Q|");
    const size_t nf = fns.size();
    if (nf <= 64) {
        for (size_t i = 0; i < nf; ++i) {
            for (size_t j = 0; j < nf; ++j)
                if (!fns.find(hedge_fn_then(fns.fns[i], fns.fns[j])))
                    throw Error("hedge functions not closed under composition");
            for (Letter l = 0; l < a.alphabet().size(); ++l)
                if (!fns.find(hedge_fn_add_root(a, l, fns.fns[i])))
                    throw Error("hedge functions not closed under add-root");
        }
    }
    (void)h;
}

void check_monotone(const StreamResult& r) {
    bool seen = false;
    for (TokenVerdict v : r.verdicts) {
        if (seen && v != TokenVerdict::Univ) throw Error("verdicts not monotone after first UNIV");
        seen = seen || v == TokenVerdict::Univ;
    }
}

}  // namespace

FuzzReport fuzz_streams(const FuzzOptions& opts) {
    FuzzReport report;
    for (int i = 0; i < opts.count; ++i) {
        uint64_t cs = mix_seed(opts.seed, static_cast<uint64_t>(i));
        Vpa a = random_vpa(cs, opts.max_states, opts.max_letters, opts.max_stack);
        std::mt19937_64 rng(mix_seed(cs, 0x7ee5));
        Tree t = random_tree(rng, a.alphabet(), opts.max_tree_nodes);
        std::vector<Event> events = linearize(t);
        ++report.cases_run;
        try {
            HedgeAutomaton h = translate_to_hedge(a);
            PiMonoid pi(h);
            SafeContext ctx(a);

            StreamResult r_plain = stream_check_hedge(pi, events, false);
            StreamResult r_anti = stream_check_hedge(pi, events, true);
            if (opts.inject_fault && !r_anti.verdicts.empty())
                r_anti.verdicts.back() = r_anti.verdicts.back() == TokenVerdict::Univ
                                             ? TokenVerdict::Cont
                                             : TokenVerdict::Univ;
            StreamResult r_safe = stream_check_safe(ctx, events);
            StreamResult r_det = stream_check_det(a, events);

            auto agree = [&](const StreamResult& x, const StreamResult& y, const char* what) {
                if (!(x == y))
                    throw Error(std::string("method disagreement (") + what + "): " +
                                verdict_string(x) + " vs " + verdict_string(y));
            };
            agree(r_plain, r_anti, "hedge plain vs antichain");
            agree(r_plain, r_safe, "hedge vs safe");
            agree(r_plain, r_det, "hedge vs det");

            check_monotone(r_plain);

            bool member = accepts(a, t);
            if (member != h.accepts(t)) throw Error("translate changed membership");
            if (r_plain.outcome == StreamOutcome::Accepted && !member)
                throw Error("stream accepted a rejected tree");
            if (r_plain.outcome == StreamOutcome::Rejected && member)
                throw Error("stream rejected an accepted tree");

            if (r_plain.earliest_univ && *r_plain.earliest_univ < events.size()) {
                std::span<const Event> prefix(events.data(), *r_plain.earliest_univ);
                if (auto refut = bounded_uuniv_refutation(a, prefix, opts.refutation_budget))
                    throw Error("positive verdict refuted by bounded search");
            }

            if (opts.check_invariants) check_stream_invariants(a, h, pi, ctx, events);
        } catch (const std::exception& e) {
            report.failure = FuzzFailure{cs, e.what(), vpa_to_text(a),
                                         print_stream_text(events, a.alphabet())};
            return report;
        }
    }
    return report;
}

FuzzReport fuzz_universality(const FuzzOptions& opts) {
    FuzzReport report;
    for (int i = 0; i < opts.count; ++i) {
        uint64_t cs = mix_seed(opts.seed ^ 0xabcdef12345ull, static_cast<uint64_t>(i));
        Vpa a = random_vpa(cs, opts.max_states, opts.max_letters, opts.max_stack);
        ++report.cases_run;
        try {
            HedgeAutomaton h = translate_to_hedge(a);
            UniversalityResult plain = universality_plain(h);
            UniversalityResult anti = universality_antichain(h);
            DetUniversalityResult det = det_universality(a);
            if (plain.universal != anti.universal)
                throw Error("plain and antichain universality disagree");
            if (plain.universal != det.universal)
                throw Error("hedge and determinization universality disagree");
            if (!plain.universal) {
                if (!plain.witness || h.accepts(*plain.witness) || accepts(a, *plain.witness))
                    throw Error("plain witness invalid");
                if (!anti.witness || h.accepts(*anti.witness) || accepts(a, *anti.witness))
                    throw Error("antichain witness invalid");
                if (!det.witness || accepts(a, *det.witness))
                    throw Error("determinization witness invalid");
            }
        } catch (const std::exception& e) {
            report.failure = FuzzFailure{cs, e.what(), vpa_to_text(a), ""};
            return report;
        }
    }
    return report;
}

}  // namespace tvu::oracle
