#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mealy/types.hpp"

namespace mealy {

// A complete deterministic letter-to-letter transducer (Q, Sigma, delta, rho).
//
// delta_i : Q -> Q is the transition map of letter i, rho_x : Sigma -> Sigma
// the output map of state x; the transition  x --i|rho_x(i)--> delta_i(x).
// Immutable after construction; the constructor validates completeness.
class MealyAutomaton {
public:
    MealyAutomaton(std::vector<std::string> state_names,
                   std::vector<std::string> letter_names,
                   std::vector<std::uint8_t> delta,   // delta[x * letters + i] = delta_i(x)
                   std::vector<std::uint8_t> rho);    // rho[x * letters + i]   = rho_x(i)

    int states() const { return n_states_; }
    int letters() const { return n_letters_; }
    const std::vector<std::string>& state_names() const { return state_names_; }
    const std::vector<std::string>& letter_names() const { return letter_names_; }

    std::uint8_t delta(int state, int letter) const {
        return delta_[static_cast<std::size_t>(state) * n_letters_ + letter];
    }
    std::uint8_t rho(int state, int letter) const {
        return rho_[static_cast<std::size_t>(state) * n_letters_ + letter];
    }

    const std::vector<std::uint8_t>& delta_table() const { return delta_; }
    const std::vector<std::uint8_t>& rho_table() const { return rho_; }

private:
    int n_states_;
    int n_letters_;
    std::vector<std::string> state_names_;
    std::vector<std::string> letter_names_;
    std::vector<std::uint8_t> delta_;
    std::vector<std::uint8_t> rho_;
};

struct Classification {
    bool invertible = false;
    bool reversible = false;
    bool bireversible = false;
    bool connected = false;
    int size = 0;
    bool prime_size = false;
};

bool is_invertible(const MealyAutomaton& a);   // every rho_x a permutation
bool is_reversible(const MealyAutomaton& a);   // every delta_i a permutation
// reversible + invertible + the inverse automaton is reversible
// (equivalently, for every output letter j the induced state relation is a bijection).
bool is_bireversible(const MealyAutomaton& a);
// underlying state digraph (all transitions, direction ignored) is connected
bool is_connected(const MealyAutomaton& a);
Classification classify(const MealyAutomaton& a);

// Dual automaton: states and letters exchange roles
// (transition  i --x|delta_i(x)--> rho_x(i)).
MealyAutomaton dual(const MealyAutomaton& a);

// Inverse automaton: x --rho_x(i)|i--> delta_i(x).  Throws NotInvertible.
MealyAutomaton inverse(const MealyAutomaton& a);

// Action of the state word u on the letter word s:
//   rho_u = rho_{u_n} o ... o rho_{u_1}   (leftmost state acts first),
//   rho_x(i s') = rho_x(i) . rho_{delta_i(x)}(s').
LetterWord act_rho(const MealyAutomaton& a, const StateWord& u, const LetterWord& s);

// Dual action of the letter word s on the state word u:
//   delta_s = delta_{s_n} o ... o delta_{s_1}   (leftmost letter acts first),
//   delta_i(x u') = delta_i(x) . delta_{rho_x(i)}(u').
StateWord act_delta(const MealyAutomaton& a, const LetterWord& s, const StateWord& u);

// rho_u(i) for a single letter, without materializing words.
std::uint8_t act_rho_letter(const MealyAutomaton& a, const StateWord& u, std::uint8_t i);

bool is_prime(int n);

// Name helpers (used by CLI and reports).
std::string format_state_word(const MealyAutomaton& a, const StateWord& u, const std::string& sep = "");
std::string format_letter_word(const MealyAutomaton& a, const LetterWord& s, const std::string& sep = "");

}  // namespace mealy
