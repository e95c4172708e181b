// error.hh -- error types shared across the library

#pragma once

#include <stdexcept>
#include <string>

namespace tvu {

/// Base class of every error raised by this library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed input text (automaton files, regexes, stream tokens).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

/// A regex or rule references a state name that is not declared.
struct UnknownState : Error {
    explicit UnknownState(const std::string& msg) : Error(msg) {}
};

/// An event sequence is not a prefix of any single-rooted linearization.
struct NotAPrefix : Error {
    explicit NotAPrefix(const std::string& msg) : Error(msg) {}
};

/// An event sequence is not a complete well-balanced linearization.
struct NotWellBalanced : Error {
    explicit NotWellBalanced(const std::string& msg) : Error(msg) {}
};

/// Operation requires a deterministic (and complete) automaton.
struct NotDeterministic : Error {
    explicit NotDeterministic(const std::string& msg) : Error(msg) {}
};

/// Stream-function misuse: close seen at the wrong stack depth.
struct StackUnderflow : Error {
    explicit StackUnderflow(const std::string& msg) : Error(msg) {}
};

/// The pointwise-union product requires non-empty member sets.
struct EmptyMember : Error {
    explicit EmptyMember(const std::string& msg) : Error(msg) {}
};

}  // namespace tvu
