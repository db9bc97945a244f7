#pragma once

#include <string>

#include "mealy/automaton.hpp"
#include "mealy/format.hpp"

#ifndef FIXTURE_DIR
#error "FIXTURE_DIR must be defined by the build"
#endif

inline mealy::MealyAutomaton load_fixture(const std::string& name) {
  return mealy::parse_mealy_file(std::string(FIXTURE_DIR) + "/" + name +
                                 ".mealy");
}

// Parses a word of single-character state names against the fixture alphabet.
inline mealy::StateWord sw(const mealy::MealyAutomaton& a,
                           const std::string& text) {
  return mealy::parse_state_word(a, text);
}

inline mealy::LetterWord lw(const mealy::MealyAutomaton& a,
                            const std::string& text) {
  return mealy::parse_letter_word(a, text);
}
