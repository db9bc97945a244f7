#pragma once

// Independent reference implementations used as test oracles.  Each one is
// written straight from the defining recurrence, with none of the batching or
// packing tricks the library uses, so agreement is meaningful.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "mealy/automaton.hpp"

namespace oracle {

// Production function of a single state, defined letter by letter:
// the output of rho_x on (i . s) is rho_x(i) followed by rho_{delta_i(x)}(s).
inline mealy::LetterWord rho_state(const mealy::MealyAutomaton& a,
                                   std::uint8_t x, const mealy::LetterWord& s) {
  mealy::LetterWord out;
  out.reserve(s.size());
  std::uint8_t cur = x;
  for (std::uint8_t i : s) {
    out.push_back(a.rho(cur, i));
    cur = a.delta(cur, i);
  }
  return out;
}

// rho_u = rho_{u_n} o ... o rho_{u_1}: the leftmost state acts first.
inline mealy::LetterWord rho_word(const mealy::MealyAutomaton& a,
                                  const mealy::StateWord& u,
                                  const mealy::LetterWord& s) {
  mealy::LetterWord cur = s;
  for (std::uint8_t x : u) cur = rho_state(a, x, cur);
  return cur;
}

// Transition function of a single letter on a state word, via the symmetric
// recurrence: delta_i(x . u) is delta_i(x) followed by delta_{rho_x(i)}(u).
inline mealy::StateWord delta_letter(const mealy::MealyAutomaton& a,
                                     std::uint8_t i, const mealy::StateWord& u) {
  mealy::StateWord out;
  out.reserve(u.size());
  std::uint8_t cur = i;
  for (std::uint8_t x : u) {
    out.push_back(a.delta(x, cur));
    cur = a.rho(x, cur);
  }
  return out;
}

inline mealy::StateWord delta_word(const mealy::MealyAutomaton& a,
                                   const mealy::LetterWord& s,
                                   const mealy::StateWord& u) {
  mealy::StateWord cur = u;
  for (std::uint8_t i : s) cur = delta_letter(a, i, cur);
  return cur;
}

// Orbit of a state word under all single-letter transitions, grown with a
// plain worklist over std::set.  Independent of the library's closure code.
inline std::set<mealy::StateWord> closure(const mealy::MealyAutomaton& a,
                                          const mealy::StateWord& seed) {
  std::set<mealy::StateWord> seen{seed};
  std::vector<mealy::StateWord> work{seed};
  while (!work.empty()) {
    mealy::StateWord u = work.back();
    work.pop_back();
    for (std::uint8_t i = 0; i < a.letters(); ++i) {
      mealy::StateWord v = delta_letter(a, i, u);
      if (seen.insert(v).second) work.push_back(v);
    }
  }
  return seen;
}

// Order of a permutation given as a table, via the lcm of its cycle lengths.
inline std::uint64_t permutation_order(const std::vector<std::uint32_t>& p) {
  std::vector<char> done(p.size(), 0);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i]) continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !done[j]; j = p[j]) {
      done[j] = 1;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

}  // namespace oracle
