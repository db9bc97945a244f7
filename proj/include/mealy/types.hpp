#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mealy {

// A word over the stateset (indices into MealyAutomaton::state_names).
using StateWord = std::vector<std::uint8_t>;
// A word over the alphabet (indices into MealyAutomaton::letter_names).
using LetterWord = std::vector<std::uint8_t>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Input file / JSON could not be parsed.
struct ParseError : Error {
    ParseError(const std::string& what, int line = -1)
        : Error(line >= 0 ? "line " + std::to_string(line) + ": " + what : what), line(line) {}
    int line;
};

// Transition table incomplete, duplicated, or referencing unknown names.
struct ValidationError : Error {
    using Error::Error;
};

struct NotInvertible : Error {
    NotInvertible() : Error("automaton is not invertible (some state output map is not a permutation)") {}
};

struct NotReversible : Error {
    NotReversible() : Error("automaton is not reversible (some letter transition map is not a permutation)") {}
};

// Orbit closure exceeded the word-count cap.
struct ComponentTooLarge : Error {
    explicit ComponentTooLarge(std::size_t cap)
        : Error("component exceeds the memory cap of " + std::to_string(cap) + " words"), cap(cap) {}
    std::size_t cap;
};

// A bounded search ran out of budget before reaching a verdict.
struct CapExceeded : Error {
    using Error::Error;
};

struct ChoiceOutOfRange : Error {
    using Error::Error;
};

// order_oracle asked to materialize a level that does not fit in memory.
struct LevelTooLarge : Error {
    using Error::Error;
};

// A structural fact that holds by theory failed to verify; indicates a bug.
struct DecompositionViolation : Error {
    using Error::Error;
};

struct WellDefinednessViolation : Error {
    using Error::Error;
};

// Equivalence-class computation ran out of budget before stabilizing.
struct IncompletePartition : Error {
    using Error::Error;
};

}  // namespace mealy
