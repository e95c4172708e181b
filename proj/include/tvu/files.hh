// files.hh -- line-oriented text formats for automata

#pragma once

#include <string>
#include <variant>

#include "tvu/hedge_automaton.hh"
#include "tvu/vpa.hh"

namespace tvu {

Vpa parse_vpa_text(std::string_view text);
HedgeAutomaton parse_hedge_text(std::string_view text);

/// Dispatches on the `kind:` line.
using AnyAutomaton = std::variant<Vpa, HedgeAutomaton>;
AnyAutomaton parse_automaton_text(std::string_view text);

std::string vpa_to_text(const Vpa& a);
std::string hedge_to_text(const HedgeAutomaton& h);

AnyAutomaton load_automaton_file(const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace tvu
