#pragma once

#include <iosfwd>
#include <string>

#include "mealy/automaton.hpp"

namespace mealy {

// Text format:
//   # comment
//   states a b c
//   letters 0 1
//   a 0 -> c 1        (reading 0 in a: go to c, output 1)
// One line per (state, letter) pair; every pair must appear exactly once.
MealyAutomaton parse_mealy_text(const std::string& text);
MealyAutomaton parse_mealy_file(const std::string& path);

// Canonical text form: states/letters headers, then transitions in
// declaration order.  parse(print(a)) reproduces a byte-stable file.
std::string print_mealy_text(const MealyAutomaton& a);

// JSON equivalent ({schema_version, states, letters, transitions[...]});
// unknown fields are rejected.
MealyAutomaton parse_mealy_json(const std::string& text);
std::string print_mealy_json(const MealyAutomaton& a);

// FNV-1a 64-bit digest of the canonical text form, "fnv1a:" + 16 hex digits.
// Embedded in every report so witnesses can be matched to their input.
std::string input_digest(const MealyAutomaton& a);

// Parses a word over the automaton's state names: either one name per
// comma-separated field ("a,b,a") or, when every state name is a single
// character, simply juxtaposed ("aba").
StateWord parse_state_word(const MealyAutomaton& a, const std::string& text);
LetterWord parse_letter_word(const MealyAutomaton& a, const std::string& text);

}  // namespace mealy
