#include "tvu/safe_configs.hh"

#include <algorithm>
#include <cassert>
#include <functional>

#include "tvu/error.hh"
#include "tvu/minmodels.hh"

namespace tvu {

bool config_subset(const ConfigSet& a, const ConfigSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void canonicalize_family(ConfigFamily& fam) {
    for (ConfigSet& s : fam) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
    }
    std::sort(fam.begin(), fam.end(), [](const ConfigSet& x, const ConfigSet& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    fam.erase(std::unique(fam.begin(), fam.end()), fam.end());
}

ConfigFamily minimize_family(ConfigFamily fam) {
    canonicalize_family(fam);
    ConfigFamily out;
    // Canonical order puts smaller sets first, so it is enough to compare
    // against the sets kept so far.
    for (ConfigSet& s : fam) {
        bool minimal = true;
        for (const ConfigSet& kept : out)
            if (config_subset(kept, s)) { minimal = false; break; }
        if (minimal) out.push_back(std::move(s));
    }
    return out;
}

static void require_nonempty_members(const ConfigFamily& fam, const char* side) {
    for (const ConfigSet& s : fam)
        if (s.empty())
            throw EmptyMember(std::string("roundcup operand ") + side + " contains an empty set");
}

ConfigFamily roundcup(const ConfigFamily& a, const ConfigFamily& b) {
    require_nonempty_members(a, "A");
    require_nonempty_members(b, "B");
    ConfigFamily out;
    out.reserve(a.size() * b.size());
    for (const ConfigSet& x : a)
        for (const ConfigSet& y : b) {
            ConfigSet u = x;
            u.insert(u.end(), y.begin(), y.end());
            std::sort(u.begin(), u.end());
            u.erase(std::unique(u.begin(), u.end()), u.end());
            out.push_back(std::move(u));
        }
    canonicalize_family(out);
    return out;
}

ConfigFamily roundcup_min(const ConfigFamily& a_in, const ConfigFamily& b_in) {
    require_nonempty_members(a_in, "A");
    require_nonempty_members(b_in, "B");
    ConfigFamily a = minimize_family(a_in);
    ConfigFamily b = minimize_family(b_in);

    ConfigFamily common, only_a, only_b;
    for (const ConfigSet& x : a)
        (std::find(b.begin(), b.end(), x) != b.end() ? common : only_a).push_back(x);
    for (const ConfigSet& y : b)
        if (std::find(a.begin(), a.end(), y) == a.end()) only_b.push_back(y);

    ConfigFamily out = common;
    for (const ConfigSet& x : only_a)
        for (const ConfigSet& y : only_b) {
            ConfigSet u = x;
            u.insert(u.end(), y.begin(), y.end());
            std::sort(u.begin(), u.end());
            u.erase(std::unique(u.begin(), u.end()), u.end());
            out.push_back(std::move(u));
        }
    return minimize_family(std::move(out));
}

SafeContext::SafeContext(const Vpa& a) : automaton(a), hmin(minimal_hedge_functions(a)) {}

ConfigFamily safe_init(const SafeContext& ctx, Letter a, StackPool& pool) {
    const Vpa& vpa = ctx.automaton;
    ConfigFamily acc;
    bool first = true;
    for (const HedgeFn& h : ctx.hmin.fns) {
        // A_h: singletons {(q,σ)} from which h then ā reaches a final
        // state on the empty stack.
        ConfigFamily family;
        for (VState q = 0; q < static_cast<VState>(vpa.num_states()); ++q) {
            h.for_each_in_row(q, [&](uint32_t qq) {
                for (StackSym g = 0; g < static_cast<StackSym>(vpa.num_stack_syms()); ++g)
                    for (const VpaRule& ret : vpa.rets_from(qq, a, g))
                        if (vpa.is_final(ret.dst))
                            family.push_back({{q, pool.push(g, StackPool::empty)}});
            });
        }
        canonicalize_family(family);
        if (family.empty()) return {};  // some hedge has no way out: Safe(a) is empty
        if (first) {
            acc = minimize_family(std::move(family));
            first = false;
        } else {
            acc = roundcup_min(acc, family);
        }
        if (acc.empty()) return {};
    }
    return acc;
}

namespace {

// Enumerate minimal models per target set, merging across targets with
// blocking clauses so supersets of already-known predecessors are never
// produced.
ConfigFamily minimal_predecessors(
    const ConfigFamily& targets,
    const std::function<std::vector<Config>(const Config&)>& preds_of) {
    ConfigFamily known;
    for (const ConfigSet& target : targets) {
        std::vector<std::pair<Config, std::vector<Config>>> clauses;
        clauses.reserve(target.size());
        bool unsat = false;
        for (const Config& c : target) {
            std::vector<Config> preds = preds_of(c);
            if (preds.empty()) { unsat = true; break; }  // no predecessor: skip this target
            clauses.emplace_back(c, std::move(preds));
        }
        if (unsat) continue;
        auto formula = minmodels::pred_formula<Config>(clauses);

        // Known sets become blocking clauses when they embed into this
        // formula's variable table; otherwise no model can contain them.
        std::vector<minmodels::Valuation> known_vals;
        for (const ConfigSet& k : known) {
            minmodels::Valuation v(formula.vars.size(), false);
            bool embeds = true;
            for (const Config& c : k) {
                auto it = std::lower_bound(formula.vars.begin(), formula.vars.end(), c);
                if (it == formula.vars.end() || *it != c) { embeds = false; break; }
                v[static_cast<size_t>(it - formula.vars.begin())] = true;
            }
            if (embeds) known_vals.push_back(std::move(v));
        }

        for (const auto& model : minmodels::minimal_models_filtered(formula.cnf, known_vals))
            known.push_back(formula.items_of(model));
    }
    return minimize_family(std::move(known));
}

}  // namespace

ConfigFamily step1_lsafe(const SafeContext& ctx, const ConfigFamily& safe_u, Letter a,
                         StackPool& pool) {
    const Vpa& vpa = ctx.automaton;
    return minimal_predecessors(safe_u, [&](const Config& c) {
        std::vector<Config> preds;
        for (const VpaRule& r : vpa.rets()) {
            if (r.letter != a || r.dst != c.state) continue;
            preds.push_back({r.src, pool.push(r.sym, c.stack)});
        }
        std::sort(preds.begin(), preds.end());
        preds.erase(std::unique(preds.begin(), preds.end()), preds.end());
        return preds;
    });
}

ConfigFamily step2_safe(const SafeContext& ctx, const ConfigFamily& lsafe) {
    const Vpa& vpa = ctx.automaton;
    ConfigFamily acc;
    bool first = true;
    for (const HedgeFn& h : ctx.hmin.fns) {
        ConfigFamily family = minimal_predecessors(lsafe, [&](const Config& c) {
            std::vector<Config> preds;
            for (VState q = 0; q < static_cast<VState>(vpa.num_states()); ++q)
                if (h.get(q, c.state)) preds.push_back({q, c.stack});
            return preds;
        });
        if (family.empty()) return {};
        if (first) {
            acc = std::move(family);
            first = false;
        } else {
            acc = roundcup_min(acc, family);
        }
        if (acc.empty()) return {};
    }
    return acc;
}

ConfigFamily step2_safe_grow(const SafeContext& ctx, const ConfigFamily& lsafe,
                             const StackPool& pool) {
    if (!ctx.hmin.id_index)
        throw Error("step2_safe_grow requires the empty hedge to be a minimal hedge");
    (void)pool;
    const Vpa& vpa = ctx.automaton;

    auto apply_h = [&](const HedgeFn& h, const ConfigSet& c) {
        ConfigSet out;
        for (const Config& cf : c)
            h.for_each_in_row(cf.state, [&](uint32_t q) { out.push_back({q, cf.stack}); });
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    };
    auto is_safe = [&](const ConfigSet& c) {
        for (const HedgeFn& h : ctx.hmin.fns) {
            ConfigSet image = apply_h(h, c);
            bool ok = false;
            for (const ConfigSet& target : lsafe)
                if (config_subset(target, image)) { ok = true; break; }
            if (!ok) return false;
        }
        return true;
    };

    // Candidate universe: every h-predecessor of a member of some
    // leaf-safe set. Additions outside it can never help the test.
    ConfigSet universe;
    for (const ConfigSet& target : lsafe)
        for (const Config& c : target)
            for (const HedgeFn& h : ctx.hmin.fns)
                for (VState q = 0; q < static_cast<VState>(vpa.num_states()); ++q)
                    if (h.get(q, c.state)) universe.push_back({q, c.stack});
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());

    ConfigFamily results;
    auto dfs = [&](auto&& self, ConfigSet cur, size_t next) -> void {
        if (is_safe(cur)) {
            results.push_back(std::move(cur));
            return;  // supersets cannot be minimal
        }
        for (size_t i = next; i < universe.size(); ++i) {
            if (std::binary_search(cur.begin(), cur.end(), universe[i])) continue;
            ConfigSet bigger = cur;
            bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), universe[i]),
                          universe[i]);
            self(self, std::move(bigger), i + 1);
        }
    };
    for (const ConfigSet& start : lsafe) dfs(dfs, start, 0);
    return minimize_family(std::move(results));
}

SafeStream::SafeStream(const SafeContext& ctx, bool use_grow) : ctx_(ctx), grow_(use_grow) {
    reach_ = initial_configs(ctx_.automaton);
}

const ConfigFamily& SafeStream::top_family() const {
    if (frames_.empty()) throw StackUnderflow("no open tag");
    return frames_.back().second;
}

bool SafeStream::reach_is_safe() const {
    for (const ConfigSet& c : frames_.back().second)
        if (config_subset(c, reach_)) return true;
    return false;
}

TokenVerdict SafeStream::feed(Event e) {
    if (completed_) throw NotWellBalanced("events continue after the root was closed");
    if (e.kind == Kind::Open) {
        reach_ = post_event(ctx_.automaton, reach_, e, pool_);
        ConfigFamily fam;
        if (frames_.empty()) {
            fam = safe_init(ctx_, e.letter, pool_);
        } else {
            ConfigFamily lsafe = step1_lsafe(ctx_, frames_.back().second, e.letter, pool_);
            fam = grow_ ? step2_safe_grow(ctx_, lsafe, pool_) : step2_safe(ctx_, lsafe);
        }
        frames_.emplace_back(e.letter, std::move(fam));
        return reach_is_safe() ? TokenVerdict::Univ : TokenVerdict::Cont;
    }
    if (frames_.empty()) throw NotWellBalanced("close without matching open");
    if (frames_.back().first != e.letter)
        throw NotWellBalanced("close tag does not match the open tag");
    reach_ = post_event(ctx_.automaton, reach_, e, pool_);
    frames_.pop_back();
    if (frames_.empty()) {
        completed_ = true;
        accepted_ = false;
        for (const Config& c : reach_)
            if (c.stack == StackPool::empty && ctx_.automaton.is_final(c.state)) accepted_ = true;
        return accepted_ ? TokenVerdict::Univ : TokenVerdict::Cont;
    }
    return reach_is_safe() ? TokenVerdict::Univ : TokenVerdict::Cont;
}

StreamOutcome SafeStream::outcome() const {
    if (!completed_) return StreamOutcome::Undetermined;
    return accepted_ ? StreamOutcome::Accepted : StreamOutcome::Rejected;
}

StreamResult stream_check_safe(const SafeContext& ctx, std::span<const Event> events,
                               bool use_grow) {
    StreamResult res;
    SafeStream st(ctx, use_grow);
    for (const Event& e : events) res.push(st.feed(e));
    res.outcome = st.outcome();
    return res;
}

StreamResult stream_check_safe(const Vpa& a, std::span<const Event> events, bool use_grow) {
    SafeContext ctx(a);
    return stream_check_safe(ctx, events, use_grow);
}

}  // namespace tvu
