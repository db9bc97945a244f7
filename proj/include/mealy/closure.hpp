#pragma once

#include <cstddef>
#include <vector>

#include "mealy/automaton.hpp"
#include "mealy/types.hpp"

namespace mealy {

inline constexpr std::size_t kDefaultComponentCap = 10'000'000;

enum class ClosurePolicy {
    Auto,      // packed parallel kernel when the word fits 128 bits, else serial
    Serial,    // reference implementation, always available
    Parallel,  // force the OpenMP kernel (falls back to serial if unpackable)
};

// Closure of {seed} under the single-letter dual actions delta_i.  For a
// reversible automaton each delta_i permutes Q^n, so this is the full orbit
// of the dual-group action, i.e. the connected component of seed in A^n.
//
// Returns the members sorted lexicographically.  Throws ComponentTooLarge
// when more than `cap` words are discovered.
std::vector<StateWord> orbit_closure(const MealyAutomaton& a, const StateWord& seed,
                                     std::size_t cap = kDefaultComponentCap,
                                     ClosurePolicy policy = ClosurePolicy::Auto);

// Same closure, but only counts the words (no member list kept beyond the
// working set).  Used by benchmarks and growth probes.
std::size_t orbit_closure_size(const MealyAutomaton& a, const StateWord& seed,
                               std::size_t cap = kDefaultComponentCap,
                               ClosurePolicy policy = ClosurePolicy::Auto);

// True when words of this length over a's stateset fit the packed fast path.
bool packable(const MealyAutomaton& a, std::size_t word_len);

}  // namespace mealy
