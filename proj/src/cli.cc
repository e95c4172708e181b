#include "tvu/cli.hh"

#include <CLI11.hpp>
#include <cstdlib>
#include <sstream>

#include "tvu/files.hh"
#include "tvu/hedge_uuniv.hh"
#include "tvu/macro_universality.hh"
#include "tvu/oracle.hh"
#include "tvu/safe_configs.hh"

namespace tvu {

namespace {

bool color_enabled() {
    const char* v = std::getenv("TVU_COLOR");
    return v != nullptr && std::string(v) == "1";
}

std::string paint(const std::string& s, const char* code) {
    if (!color_enabled()) return s;
    return std::string("\033[") + code + "m" + s + "\033[0m";
}

std::string outcome_name(StreamOutcome o) {
    switch (o) {
        case StreamOutcome::Accepted: return "ACCEPT";
        case StreamOutcome::Rejected: return "REJECT";
        case StreamOutcome::Undetermined: return "UNDETERMINED";
    }
    return "?";
}

std::vector<Event> read_stream(const std::string& path, const Alphabet& alphabet) {
    if (path == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        return parse_stream_text(buf.str(), alphabet);
    }
    return parse_stream_text(read_file(path), alphabet);
}

const Alphabet& alphabet_of(const AnyAutomaton& a) {
    if (std::holds_alternative<Vpa>(a)) return std::get<Vpa>(a).alphabet();
    return std::get<HedgeAutomaton>(a).alphabet();
}

int cmd_check(const std::string& file, std::string method, std::ostream& out, std::ostream& err) {
    AnyAutomaton any = load_automaton_file(file);
    UniversalityResult res;
    const Alphabet& alphabet = alphabet_of(any);
    if (method == "det-oracle") {
        if (!std::holds_alternative<Vpa>(any)) {
            err << "error: method det-oracle needs a VPA input\n";
            return 2;
        }
        auto det = oracle::det_universality(std::get<Vpa>(any));
        res.universal = det.universal;
        res.witness = det.witness;
    } else {
        HedgeAutomaton h = std::holds_alternative<Vpa>(any)
                               ? translate_to_hedge(std::get<Vpa>(any))
                               : std::get<HedgeAutomaton>(any);
        res = method == "hedge" ? universality_plain(h) : universality_antichain(h);
    }
    if (res.universal) {
        out << paint("UNIVERSAL", "32") << '\n';
        return 0;
    }
    out << paint("NOT-UNIVERSAL", "31") << '\n';
    if (res.witness)
        out << "witness: " << print_stream_text(linearize(*res.witness), alphabet) << '\n';
    return 3;
}

int cmd_stream(const std::string& file, const std::string& streampath, std::string method,
               std::ostream& out, std::ostream& err) {
    AnyAutomaton any = load_automaton_file(file);
    const Alphabet& alphabet = alphabet_of(any);
    if (method.empty())
        method = std::holds_alternative<Vpa>(any) ? "safe" : "hedge-ac";

    std::vector<Event> events = read_stream(streampath, alphabet);

    StreamResult res;
    if (method == "safe" || method == "det-oracle") {
        if (!std::holds_alternative<Vpa>(any)) {
            err << "error: method " << method << " needs a VPA input\n";
            return 2;
        }
        const Vpa& a = std::get<Vpa>(any);
        res = method == "safe" ? stream_check_safe(a, events) : oracle::stream_check_det(a, events);
    } else if (method == "hedge" || method == "hedge-ac") {
        HedgeAutomaton h = std::holds_alternative<Vpa>(any)
                               ? translate_to_hedge(std::get<Vpa>(any))
                               : std::get<HedgeAutomaton>(any);
        res = stream_check_hedge(h, events, method == "hedge-ac");
    } else {
        err << "error: unknown method '" << method << "'\n";
        return 2;
    }

    for (size_t i = 0; i < events.size(); ++i) {
        bool univ = res.verdicts[i] == TokenVerdict::Univ;
        out << (i + 1) << '\t' << event_token(events[i], alphabet) << '\t'
            << (univ ? paint("UNIV", "32") : "CONT") << '\n';
    }
    out << "summary: earliest-univ=";
    if (res.earliest_univ)
        out << *res.earliest_univ;
    else
        out << "none";
    out << " result=" << outcome_name(res.outcome) << '\n';
    return 0;
}

int cmd_translate(const std::string& file, const std::string& outpath, std::ostream& out,
                  std::ostream& err) {
    AnyAutomaton any = load_automaton_file(file);
    if (!std::holds_alternative<Vpa>(any)) {
        err << "error: translate needs a VPA input\n";
        return 2;
    }
    HedgeAutomaton h = translate_to_hedge(std::get<Vpa>(any));
    write_file(outpath, hedge_to_text(h));
    out << "wrote " << outpath << '\n';
    return 0;
}

int cmd_fuzz(const oracle::FuzzOptions& opts, const std::string& repro_path, std::ostream& out,
             std::ostream& err) {
    oracle::FuzzReport streams = oracle::fuzz_streams(opts);
    oracle::FuzzReport univ = oracle::fuzz_universality(opts);
    const oracle::FuzzFailure* fail =
        streams.failure ? &*streams.failure : (univ.failure ? &*univ.failure : nullptr);
    if (!fail) {
        out << "fuzz: " << streams.cases_run << " stream cases, " << univ.cases_run
            << " universality cases, all agree\n";
        return 0;
    }
    err << "fuzz mismatch (case seed " << fail->case_seed << "): " << fail->message << '\n';
    std::ostringstream repro;
    repro << "# fuzz repro, case seed " << fail->case_seed << "\n# " << fail->message
          << "\n\n" << fail->automaton_text;
    if (!fail->stream_text.empty()) repro << "\n# stream:\n# " << fail->stream_text << '\n';
    write_file(repro_path, repro.str());
    err << "repro written to " << repro_path << '\n';
    return 4;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"universality and u-universality of visibly pushdown and hedge automata"};
    app.require_subcommand(1);

    std::string file, streampath = "-", method, outpath = "out.hedge";
    std::string repro_path = "fuzz-repro.txt";
    oracle::FuzzOptions fuzz;
    int budget = 8, max_nodes = 6;

    auto* check = app.add_subcommand("check", "decide universality");
    check->add_option("file", file)->required();
    check->add_option("--method", method)->check(CLI::IsMember({"hedge", "hedge-ac", "det-oracle"}));

    auto* stream = app.add_subcommand("stream", "incremental u-universality over a tag stream");
    stream->add_option("file", file)->required();
    stream->add_option("stream", streampath);
    stream->add_option("--method", method)
        ->check(CLI::IsMember({"hedge", "hedge-ac", "safe", "det-oracle"}));

    auto* translate = app.add_subcommand("translate", "VPA to hedge automaton");
    translate->add_option("file", file)->required();
    translate->add_option("-o,--out", outpath)->required();

    auto* fz = app.add_subcommand("fuzz", "cross-check the methods on random automata");
    fz->add_option("--count", fuzz.count);
    fz->add_option("--seed", fuzz.seed);
    fz->add_option("--max-states", fuzz.max_states);
    fz->add_option("--budget", fuzz.refutation_budget);
    fz->add_option("--repro", repro_path);
    fz->add_flag("--self-test-fault", fuzz.inject_fault)->group("");  // hidden

    auto* orc = app.add_subcommand("oracle", "brute-force verification helpers");
    orc->require_subcommand(1);
    auto* ouni = orc->add_subcommand("universality", "exact universality via determinization");
    ouni->add_option("file", file)->required();
    auto* owit = orc->add_subcommand("witness", "smallest rejected tree within a node budget");
    owit->add_option("file", file)->required();
    owit->add_option("--max-nodes", max_nodes);
    auto* oref = orc->add_subcommand("refute", "rejected completion of a stream prefix");
    oref->add_option("file", file)->required();
    oref->add_option("stream", streampath)->required();
    oref->add_option("--budget", budget);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (check->parsed())
            return cmd_check(file, method.empty() ? "hedge-ac" : method, out, err);
        if (stream->parsed()) return cmd_stream(file, streampath, method, out, err);
        if (translate->parsed()) return cmd_translate(file, outpath, out, err);
        if (fz->parsed()) return cmd_fuzz(fuzz, repro_path, out, err);
        if (orc->parsed()) {
            if (ouni->parsed()) {
                AnyAutomaton any = load_automaton_file(file);
                if (!std::holds_alternative<Vpa>(any)) {
                    err << "error: oracle universality needs a VPA input\n";
                    return 2;
                }
                const Vpa& a = std::get<Vpa>(any);
                auto res = oracle::det_universality(a);
                if (res.universal) {
                    out << "UNIVERSAL\n";
                    return 0;
                }
                out << "NOT-UNIVERSAL\n";
                if (res.witness)
                    out << "witness: " << print_stream_text(linearize(*res.witness), a.alphabet())
                        << '\n';
                return 3;
            }
            if (owit->parsed()) {
                AnyAutomaton any = load_automaton_file(file);
                std::optional<Tree> w;
                if (std::holds_alternative<Vpa>(any))
                    w = oracle::bounded_nonuniversality_witness(std::get<Vpa>(any), max_nodes);
                else
                    w = oracle::bounded_nonuniversality_witness(std::get<HedgeAutomaton>(any),
                                                                max_nodes);
                if (!w) {
                    out << "no rejected tree with <= " << max_nodes << " nodes\n";
                    return 0;
                }
                out << "witness: " << print_stream_text(linearize(*w), alphabet_of(any)) << '\n';
                return 3;
            }
            if (oref->parsed()) {
                AnyAutomaton any = load_automaton_file(file);
                std::vector<Event> prefix = read_stream(streampath, alphabet_of(any));
                std::optional<std::vector<Event>> v;
                if (std::holds_alternative<Vpa>(any))
                    v = oracle::bounded_uuniv_refutation(std::get<Vpa>(any), prefix, budget);
                else
                    v = oracle::bounded_uuniv_refutation(std::get<HedgeAutomaton>(any), prefix,
                                                         budget);
                if (!v) {
                    out << "no rejected completion within budget " << budget << '\n';
                    return 0;
                }
                out << "refutation: " << print_stream_text(*v, alphabet_of(any)) << '\n';
                return 3;
            }
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace tvu
