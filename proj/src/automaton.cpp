#include "mealy/automaton.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace mealy {

MealyAutomaton::MealyAutomaton(std::vector<std::string> state_names,
                               std::vector<std::string> letter_names,
                               std::vector<std::uint8_t> delta,
                               std::vector<std::uint8_t> rho)
    : n_states_(static_cast<int>(state_names.size())),
      n_letters_(static_cast<int>(letter_names.size())),
      state_names_(std::move(state_names)),
      letter_names_(std::move(letter_names)),
      delta_(std::move(delta)),
      rho_(std::move(rho)) {
    if (n_states_ < 1) throw ValidationError("automaton needs at least one state");
    if (n_letters_ < 1) throw ValidationError("automaton needs at least one letter");
    if (n_states_ > 255 || n_letters_ > 255)
        throw ValidationError("at most 255 states and letters supported");
    const std::size_t want = static_cast<std::size_t>(n_states_) * n_letters_;
    if (delta_.size() != want || rho_.size() != want)
        throw ValidationError("transition table size mismatch (incomplete or duplicated entries)");
    for (std::size_t k = 0; k < want; ++k) {
        if (delta_[k] >= n_states_) throw ValidationError("delta entry references unknown state");
        if (rho_[k] >= n_letters_) throw ValidationError("rho entry references unknown letter");
    }
    std::set<std::string> seen;
    for (const auto& n : state_names_)
        if (!seen.insert(n).second) throw ValidationError("duplicate state name '" + n + "'");
    seen.clear();
    for (const auto& n : letter_names_)
        if (!seen.insert(n).second) throw ValidationError("duplicate letter name '" + n + "'");
}

namespace {

// Is col -> table[row(col)] a permutation, for each fixed selector?
bool column_permutation(int n_rows, int n_cols, auto at) {
    std::vector<char> hit;
    for (int r = 0; r < n_rows; ++r) {
        hit.assign(static_cast<std::size_t>(n_cols), 0);
        for (int c = 0; c < n_cols; ++c) {
            int v = at(r, c);
            if (hit[v]) return false;
            hit[v] = 1;
        }
    }
    return true;
}

}  // namespace

bool is_invertible(const MealyAutomaton& a) {
    return column_permutation(a.states(), a.letters(),
                              [&](int x, int i) { return a.rho(x, i); });
}

bool is_reversible(const MealyAutomaton& a) {
    return column_permutation(a.letters(), a.states(),
                              [&](int i, int x) { return a.delta(x, i); });
}

bool is_bireversible(const MealyAutomaton& a) {
    if (!is_invertible(a) || !is_reversible(a)) return false;
    return is_reversible(inverse(a));
}

bool is_connected(const MealyAutomaton& a) {
    const int n = a.states();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (int x = 0; x < n; ++x)
        for (int i = 0; i < a.letters(); ++i) {
            int rx = find(x), ry = find(a.delta(x, i));
            if (rx != ry) parent[rx] = ry;
        }
    int root = find(0);
    for (int x = 1; x < n; ++x)
        if (find(x) != root) return false;
    return true;
}

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Classification classify(const MealyAutomaton& a) {
    Classification c;
    c.invertible = is_invertible(a);
    c.reversible = is_reversible(a);
    c.bireversible = is_bireversible(a);
    c.connected = is_connected(a);
    c.size = a.states();
    c.prime_size = is_prime(c.size);
    return c;
}

MealyAutomaton dual(const MealyAutomaton& a) {
    const int q = a.states(), s = a.letters();
    // Dual transition of "letter" x on "state" i is rho_x(i); dual output is delta_i(x).
    std::vector<std::uint8_t> ddelta(static_cast<std::size_t>(s) * q);
    std::vector<std::uint8_t> drho(static_cast<std::size_t>(s) * q);
    for (int i = 0; i < s; ++i)
        for (int x = 0; x < q; ++x) {
            ddelta[static_cast<std::size_t>(i) * q + x] = a.rho(x, i);
            drho[static_cast<std::size_t>(i) * q + x] = a.delta(x, i);
        }
    return MealyAutomaton(a.letter_names(), a.state_names(), std::move(ddelta), std::move(drho));
}

MealyAutomaton inverse(const MealyAutomaton& a) {
    if (!is_invertible(a)) throw NotInvertible();
    const int q = a.states(), s = a.letters();
    std::vector<std::uint8_t> idelta(static_cast<std::size_t>(q) * s);
    std::vector<std::uint8_t> irho(static_cast<std::size_t>(q) * s);
    for (int x = 0; x < q; ++x)
        for (int i = 0; i < s; ++i) {
            std::uint8_t out = a.rho(x, i);
            idelta[static_cast<std::size_t>(x) * s + out] = a.delta(x, i);
            irho[static_cast<std::size_t>(x) * s + out] = static_cast<std::uint8_t>(i);
        }
    return MealyAutomaton(a.state_names(), a.letter_names(), std::move(idelta), std::move(irho));
}

LetterWord act_rho(const MealyAutomaton& a, const StateWord& u, const LetterWord& s) {
    LetterWord out = s;
    for (std::uint8_t x : u) {
        // Single state x transforms the whole word, feeding its state forward.
        int cur = x;
        for (auto& c : out) {
            std::uint8_t produced = a.rho(cur, c);
            cur = a.delta(cur, c);
            c = produced;
        }
    }
    return out;
}

StateWord act_delta(const MealyAutomaton& a, const LetterWord& s, const StateWord& u) {
    StateWord out = u;
    for (std::uint8_t i : s) {
        // Single letter i traverses the word, transforming as it crosses each state.
        int cur = i;
        for (auto& x : out) {
            std::uint8_t next = a.delta(x, cur);
            cur = a.rho(x, cur);
            x = next;
        }
    }
    return out;
}

std::uint8_t act_rho_letter(const MealyAutomaton& a, const StateWord& u, std::uint8_t i) {
    int cur = i;
    for (std::uint8_t x : u) cur = a.rho(x, cur);
    return static_cast<std::uint8_t>(cur);
}

std::string format_state_word(const MealyAutomaton& a, const StateWord& u, const std::string& sep) {
    std::string out;
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (k) out += sep;
        out += a.state_names()[u[k]];
    }
    return out;
}

std::string format_letter_word(const MealyAutomaton& a, const LetterWord& s, const std::string& sep) {
    std::string out;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (k) out += sep;
        out += a.letter_names()[s[k]];
    }
    return out;
}

}  // namespace mealy
