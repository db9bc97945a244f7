#pragma once

#include <cstdint>
#include <vector>

#include "mealy/closure.hpp"

namespace mealy {

// A connected component of the power automaton A^n, i.e. one orbit of the
// dual action on Q^n.  Members are sorted lexicographically; the
// representative is the minimum.  Immutable value.
struct Component {
    int level = 0;  // n = word length
    std::vector<StateWord> members;

    std::size_t size() const { return members.size(); }
    const StateWord& representative() const { return members.front(); }
    bool contains(const StateWord& w) const;
};

struct ComponentEdge {
    Component parent;
    Component child;
    std::uint64_t label = 0;  // child.size / parent.size
};

Component component_of(const MealyAutomaton& a, const StateWord& u,
                       std::size_t cap = kDefaultComponentCap,
                       ClosurePolicy policy = ClosurePolicy::Auto);

// The distinct components of A^{n+1} whose words extend c by one state,
// ordered by child representative.  Every child contains rep.x for some x,
// so extending the representative alone reaches all of them.
std::vector<ComponentEdge> children_components(const MealyAutomaton& a, const Component& c,
                                               std::size_t cap = kDefaultComponentCap);

// Verifies the copy structure of a tree edge: dropping the last state maps
// the child onto the parent, each parent word hit exactly `label` times.
// Returns the per-parent-word multiplicities (all equal to label);
// throws DecompositionViolation on any mismatch.
std::vector<std::uint64_t> copies_decomposition(const ComponentEdge& e);

// Sizes of the components of u^m for m = 1..max_power.
std::vector<std::size_t> power_component_sizes(const MealyAutomaton& a, const StateWord& u,
                                               int max_power,
                                               std::size_t cap = kDefaultComponentCap);

}  // namespace mealy
