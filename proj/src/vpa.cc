#include "tvu/vpa.hh"

#include <algorithm>
#include <set>

#include "tvu/error.hh"

namespace tvu {

Vpa::Vpa(Alphabet alphabet, std::vector<std::string> states, std::vector<std::string> stack_syms,
         std::vector<VState> initial, std::vector<VState> final, std::vector<VpaRule> calls,
         std::vector<VpaRule> rets)
    : alphabet_(std::move(alphabet)),
      states_(std::move(states)),
      stack_names_(std::move(stack_syms)),
      initial_(std::move(initial)),
      final_(std::move(final)),
      calls_(std::move(calls)),
      rets_(std::move(rets)) {
    if (states_.empty()) throw ParseError("VPA needs at least one state");
    if (stack_names_.empty()) throw ParseError("VPA needs at least one stack symbol");
    std::set<std::string> seen;
    for (const auto& s : states_) {
        Alphabet::check_name(s, "state");
        if (!seen.insert(s).second) throw ParseError("duplicate state '" + s + "'");
    }
    seen.clear();
    for (const auto& s : stack_names_) {
        Alphabet::check_name(s, "stack symbol");
        if (!seen.insert(s).second) throw ParseError("duplicate stack symbol '" + s + "'");
    }
    auto check_state = [&](VState q) {
        if (q >= states_.size()) throw ParseError("state index out of range");
    };
    for (VState q : initial_) check_state(q);
    for (VState q : final_) check_state(q);
    for (auto* rules : {&calls_, &rets_}) {
        for (const VpaRule& r : *rules) {
            check_state(r.src);
            check_state(r.dst);
            if (r.letter >= alphabet_.size()) throw ParseError("rule letter out of range");
            if (r.sym >= stack_names_.size()) throw ParseError("rule stack symbol out of range");
        }
        std::sort(rules->begin(), rules->end());
        rules->erase(std::unique(rules->begin(), rules->end()), rules->end());
    }
    std::sort(initial_.begin(), initial_.end());
    initial_.erase(std::unique(initial_.begin(), initial_.end()), initial_.end());
    std::sort(final_.begin(), final_.end());
    final_.erase(std::unique(final_.begin(), final_.end()), final_.end());
}

bool Vpa::is_final(VState q) const {
    return std::binary_search(final_.begin(), final_.end(), q);
}

bool Vpa::is_initial(VState q) const {
    return std::binary_search(initial_.begin(), initial_.end(), q);
}

bool Vpa::is_deterministic() const {
    if (initial_.size() > 1) return false;
    for (size_t i = 1; i < calls_.size(); ++i)
        if (calls_[i].src == calls_[i - 1].src && calls_[i].letter == calls_[i - 1].letter)
            return false;
    for (size_t i = 1; i < rets_.size(); ++i)
        if (rets_[i].src == rets_[i - 1].src && rets_[i].letter == rets_[i - 1].letter &&
            rets_[i].sym == rets_[i - 1].sym)
            return false;
    return true;
}

bool Vpa::is_complete() const {
    for (VState q = 0; q < states_.size(); ++q)
        for (Letter a = 0; a < alphabet_.size(); ++a) {
            if (calls_from(q, a).empty()) return false;
            for (StackSym g = 0; g < stack_names_.size(); ++g)
                if (rets_from(q, a, g).empty()) return false;
        }
    return true;
}

std::span<const VpaRule> Vpa::calls_from(VState q, Letter a) const {
    VpaRule lo{q, a, 0, 0};
    VpaRule hi{q, a, static_cast<StackSym>(stack_names_.size()), 0};
    auto b = std::lower_bound(calls_.begin(), calls_.end(), lo);
    auto e = std::lower_bound(calls_.begin(), calls_.end(), hi);
    return {b, e};
}

std::span<const VpaRule> Vpa::rets_from(VState q, Letter a, StackSym g) const {
    VpaRule lo{q, a, g, 0};
    VpaRule hi{q, a, g, static_cast<VState>(states_.size())};
    auto b = std::lower_bound(rets_.begin(), rets_.end(), lo);
    auto e = std::lower_bound(rets_.begin(), rets_.end(), hi);
    return {b, e};
}

uint32_t StackPool::push(StackSym sym, uint32_t below) {
    uint64_t key = (static_cast<uint64_t>(sym) << 32) | below;
    auto it = intern_.find(key);
    if (it != intern_.end()) return it->second;
    uint32_t id = static_cast<uint32_t>(nodes_.size());
    nodes_.push_back({sym, below});
    depth_.push_back(depth_[below] + 1);
    intern_.emplace(key, id);
    return id;
}

std::vector<StackSym> StackPool::symbols(uint32_t id) const {
    std::vector<StackSym> out;
    while (id != empty) {
        out.push_back(top(id));
        id = pop(id);
    }
    return out;
}

ConfigSet initial_configs(const Vpa& a) {
    ConfigSet c;
    for (VState q : a.initial()) c.push_back({q, StackPool::empty});
    return c;
}

static void canonicalize(ConfigSet& c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
}

ConfigSet post_event(const Vpa& a, const ConfigSet& c, Event e, StackPool& pool) {
    ConfigSet out;
    if (e.kind == Kind::Open) {
        for (const Config& cf : c)
            for (const VpaRule& r : a.calls_from(cf.state, e.letter))
                out.push_back({r.dst, pool.push(r.sym, cf.stack)});
    } else {
        for (const Config& cf : c) {
            if (cf.stack == StackPool::empty) continue;
            StackSym g = pool.top(cf.stack);
            uint32_t rest = pool.pop(cf.stack);
            for (const VpaRule& r : a.rets_from(cf.state, e.letter, g))
                out.push_back({r.dst, rest});
        }
    }
    canonicalize(out);
    return out;
}

bool accepts_events(const Vpa& a, std::span<const Event> events) {
    // Validates shape as it goes; only full single-rooted linearizations
    // are accepted inputs.
    (void)tree_from_events(events);
    StackPool pool;
    ConfigSet c = initial_configs(a);
    for (const Event& e : events) c = post_event(a, c, e, pool);
    for (const Config& cf : c)
        if (cf.stack == StackPool::empty && a.is_final(cf.state)) return true;
    return false;
}

bool accepts(const Vpa& a, const Tree& t) {
    StackPool pool;
    ConfigSet c = initial_configs(a);
    std::vector<Event> events = linearize(t);
    for (const Event& e : events) {
        c = post_event(a, c, e, pool);
        if (c.empty()) return false;
    }
    for (const Config& cf : c)
        if (cf.stack == StackPool::empty && a.is_final(cf.state)) return true;
    return false;
}

Vpa random_vpa(uint64_t seed, int max_states, int max_letters, int max_stack) {
    std::mt19937_64 rng(seed);
    auto pick = [&](int mx) { return std::uniform_int_distribution<int>(1, mx)(rng); };
    int nq = pick(max_states), nl = pick(max_letters), ng = pick(max_stack);
    auto coin = [&] { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; };

    std::vector<std::string> letters, states, syms;
    for (int i = 0; i < nl; ++i) letters.push_back(std::string(1, static_cast<char>('a' + i)));
    for (int i = 0; i < nq; ++i) states.push_back("q" + std::to_string(i));
    for (int i = 0; i < ng; ++i) syms.push_back("g" + std::to_string(i));

    std::vector<VpaRule> calls, rets;
    for (VState q = 0; q < static_cast<VState>(nq); ++q)
        for (Letter a = 0; a < static_cast<Letter>(nl); ++a)
            for (StackSym g = 0; g < static_cast<StackSym>(ng); ++g)
                for (VState p = 0; p < static_cast<VState>(nq); ++p) {
                    if (coin()) calls.push_back({q, a, g, p});
                    if (coin()) rets.push_back({q, a, g, p});
                }

    std::vector<VState> initial, final;
    for (VState q = 0; q < static_cast<VState>(nq); ++q) {
        if (coin()) initial.push_back(q);
        if (coin()) final.push_back(q);
    }
    if (initial.empty())
        initial.push_back(static_cast<VState>(std::uniform_int_distribution<int>(0, nq - 1)(rng)));

    return Vpa(Alphabet(letters), states, syms, initial, final, calls, rets);
}

}  // namespace tvu
