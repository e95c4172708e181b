#include "tvu/files.hh"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "tvu/error.hh"

namespace tvu {

namespace {

struct Line {
    std::string head;
    std::vector<std::string> rest;   // remaining whitespace tokens
    std::string tail;                // everything after the head, trimmed (for regexes)
    size_t number;
};

std::vector<Line> tokenize_lines(std::string_view text) {
    std::vector<Line> out;
    std::istringstream is{std::string(text)};
    std::string raw;
    size_t no = 0;
    while (std::getline(is, raw)) {
        ++no;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::string head;
        if (!(ls >> head)) continue;
        Line line;
        line.head = head;
        line.number = no;
        std::string tok;
        while (ls >> tok) line.rest.push_back(tok);
        size_t at = raw.find(head) + head.size();
        while (at < raw.size() && std::isspace(static_cast<unsigned char>(raw[at]))) ++at;
        size_t end = raw.size();
        while (end > at && std::isspace(static_cast<unsigned char>(raw[end - 1]))) --end;
        line.tail = raw.substr(at, end - at);
        out.push_back(std::move(line));
    }
    return out;
}

[[noreturn]] void fail(const Line& line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line.number) + ": " + msg);
}

std::string detect_kind(const std::vector<Line>& lines) {
    if (lines.empty()) throw ParseError("empty automaton file");
    if (lines[0].head != "kind:") fail(lines[0], "expected 'kind: vpa' or 'kind: hedge' first");
    if (lines[0].rest.size() != 1) fail(lines[0], "kind takes exactly one value");
    return lines[0].rest[0];
}

uint32_t index_of(const std::vector<std::string>& names, const std::string& name,
                  const Line& line, const char* what) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) fail(line, std::string("unknown ") + what + " '" + name + "'");
    return static_cast<uint32_t>(it - names.begin());
}

}  // namespace

Vpa parse_vpa_text(std::string_view text) {
    auto lines = tokenize_lines(text);
    if (detect_kind(lines) != "vpa") throw ParseError("expected a VPA file (kind: vpa)");

    std::map<std::string, std::vector<std::string>> sections;
    std::vector<Line> rules;
    for (size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.head == "call" || l.head == "ret") {
            rules.push_back(l);
        } else if (l.head == "alphabet:" || l.head == "states:" || l.head == "initial:" ||
                   l.head == "final:" || l.head == "stack:") {
            if (!sections.emplace(l.head, l.rest).second) fail(l, "duplicate '" + l.head + "'");
        } else {
            fail(l, "unexpected directive '" + l.head + "'");
        }
    }
    for (const char* req : {"alphabet:", "states:", "stack:", "initial:", "final:"})
        if (!sections.count(req)) throw ParseError(std::string("missing '") + req + "' line");

    Alphabet alphabet(sections.at("alphabet:"));
    const auto& states = sections.at("states:");
    const auto& stack = sections.at("stack:");

    std::vector<VState> initial, final;
    Line header{"", {}, "", 0};
    for (const auto& s : sections.at("initial:"))
        initial.push_back(index_of(states, s, header, "state"));
    for (const auto& s : sections.at("final:"))
        final.push_back(index_of(states, s, header, "state"));

    std::vector<VpaRule> calls, rets;
    for (const Line& l : rules) {
        if (l.rest.size() != 4) fail(l, "rule needs: <src> <letter> <symbol> <dst>");
        VpaRule r{index_of(states, l.rest[0], l, "state"), alphabet.require(l.rest[1]),
                  index_of(stack, l.rest[2], l, "stack symbol"),
                  index_of(states, l.rest[3], l, "state")};
        (l.head == "call" ? calls : rets).push_back(r);
    }
    return Vpa(std::move(alphabet), states, stack, std::move(initial), std::move(final),
               std::move(calls), std::move(rets));
}

HedgeAutomaton parse_hedge_text(std::string_view text) {
    auto lines = tokenize_lines(text);
    if (detect_kind(lines) != "hedge") throw ParseError("expected a hedge automaton file (kind: hedge)");

    std::map<std::string, std::vector<std::string>> sections;
    std::vector<Line> rules;
    for (size_t i = 1; i < lines.size(); ++i) {
        const Line& l = lines[i];
        if (l.head == "rule") {
            rules.push_back(l);
        } else if (l.head == "alphabet:" || l.head == "states:" || l.head == "final:") {
            if (!sections.emplace(l.head, l.rest).second) fail(l, "duplicate '" + l.head + "'");
        } else {
            fail(l, "unexpected directive '" + l.head + "'");
        }
    }
    for (const char* req : {"alphabet:", "states:", "final:"})
        if (!sections.count(req)) throw ParseError(std::string("missing '") + req + "' line");

    Alphabet alphabet(sections.at("alphabet:"));
    const auto& states = sections.at("states:");
    std::vector<HState> final;
    Line header{"", {}, "", 0};
    for (const auto& s : sections.at("final:"))
        final.push_back(index_of(states, s, header, "state"));

    std::vector<HedgeRule> hrules;
    for (const Line& l : rules) {
        if (l.rest.size() < 3) fail(l, "rule needs: <letter> <state> <regex>");
        Letter a = alphabet.require(l.rest[0]);
        HState q = index_of(states, l.rest[1], l, "state");
        // The regex is the tail after the letter and the state token.
        size_t at = l.tail.find(l.rest[0]) + l.rest[0].size();
        at = l.tail.find(l.rest[1], at) + l.rest[1].size();
        std::string regex = l.tail.substr(at);
        hrules.push_back({a, q, compile_horizontal(regex, states)});
    }
    return HedgeAutomaton(std::move(alphabet), states, std::move(final), std::move(hrules));
}

AnyAutomaton parse_automaton_text(std::string_view text) {
    auto lines = tokenize_lines(text);
    std::string kind = detect_kind(lines);
    if (kind == "vpa") return parse_vpa_text(text);
    if (kind == "hedge") return parse_hedge_text(text);
    throw ParseError("unknown automaton kind '" + kind + "'");
}

std::string vpa_to_text(const Vpa& a) {
    std::ostringstream os;
    os << "kind: vpa\n";
    os << "alphabet:";
    for (const auto& l : a.alphabet().names()) os << ' ' << l;
    os << "\nstates:";
    for (const auto& s : a.state_names()) os << ' ' << s;
    os << "\ninitial:";
    for (VState q : a.initial()) os << ' ' << a.state_names()[q];
    os << "\nfinal:";
    for (VState q : a.final()) os << ' ' << a.state_names()[q];
    os << "\nstack:";
    for (const auto& s : a.stack_names()) os << ' ' << s;
    os << '\n';
    for (const VpaRule& r : a.calls())
        os << "call " << a.state_names()[r.src] << ' ' << a.alphabet().name(r.letter) << ' '
           << a.stack_names()[r.sym] << ' ' << a.state_names()[r.dst] << '\n';
    for (const VpaRule& r : a.rets())
        os << "ret " << a.state_names()[r.src] << ' ' << a.alphabet().name(r.letter) << ' '
           << a.stack_names()[r.sym] << ' ' << a.state_names()[r.dst] << '\n';
    return os.str();
}

std::string hedge_to_text(const HedgeAutomaton& h) {
    std::ostringstream os;
    os << "kind: hedge\n";
    os << "alphabet:";
    for (const auto& l : h.alphabet().names()) os << ' ' << l;
    os << "\nstates:";
    for (const auto& s : h.state_names()) os << ' ' << s;
    os << "\nfinal:";
    for (HState q = 0; q < h.num_states(); ++q)
        if (h.final_mask() & (Macrostate{1} << q)) os << ' ' << h.state_name(q);
    os << '\n';
    for (const HedgeRule& r : h.rules()) {
        std::string regex = nfa_to_regex(r.lang, h.state_names());
        if (regex.empty()) continue;  // empty language: the rule can never fire
        os << "rule " << h.alphabet().name(r.letter) << ' ' << h.state_name(r.target) << ' '
           << regex << '\n';
    }
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write '" + path + "'");
    f << content;
}

AnyAutomaton load_automaton_file(const std::string& path) {
    return parse_automaton_text(read_file(path));
}

}  // namespace tvu
