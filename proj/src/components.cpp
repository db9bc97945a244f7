#include "mealy/components.hpp"

#include <algorithm>
#include <map>

namespace mealy {

bool Component::contains(const StateWord& w) const {
    return std::binary_search(members.begin(), members.end(), w);
}

Component component_of(const MealyAutomaton& a, const StateWord& u,
                       std::size_t cap, ClosurePolicy policy) {
    Component c;
    c.level = static_cast<int>(u.size());
    c.members = orbit_closure(a, u, cap, policy);
    return c;
}

std::vector<ComponentEdge> children_components(const MealyAutomaton& a, const Component& c,
                                               std::size_t cap) {
    std::vector<ComponentEdge> out;
    const StateWord& rep = c.representative();
    for (int x = 0; x < a.states(); ++x) {
        StateWord ext = rep;
        ext.push_back(static_cast<std::uint8_t>(x));
        bool seen = false;
        for (const auto& e : out)
            if (e.child.contains(ext)) {
                seen = true;
                break;
            }
        if (seen) continue;
        ComponentEdge e;
        e.parent = c;
        e.child = component_of(a, ext, cap);
        if (e.child.size() % c.size() != 0)
            throw DecompositionViolation("child component size not a multiple of parent size");
        e.label = e.child.size() / c.size();
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(), [](const ComponentEdge& l, const ComponentEdge& r) {
        return l.child.representative() < r.child.representative();
    });
    return out;
}

std::vector<std::uint64_t> copies_decomposition(const ComponentEdge& e) {
    std::map<StateWord, std::uint64_t> mult;
    for (const auto& w : e.child.members) {
        StateWord prefix(w.begin(), w.end() - 1);
        if (!e.parent.contains(prefix))
            throw DecompositionViolation("child word does not project into the parent component");
        ++mult[prefix];
    }
    if (mult.size() != e.parent.size())
        throw DecompositionViolation("projection misses part of the parent component");
    std::vector<std::uint64_t> counts;
    counts.reserve(mult.size());
    for (const auto& [w, m] : mult) {
        if (m != e.label)
            throw DecompositionViolation("copy multiplicity differs from the edge label");
        counts.push_back(m);
    }
    return counts;
}

std::vector<std::size_t> power_component_sizes(const MealyAutomaton& a, const StateWord& u,
                                               int max_power, std::size_t cap) {
    std::vector<std::size_t> sizes;
    StateWord w;
    for (int m = 1; m <= max_power; ++m) {
        w.insert(w.end(), u.begin(), u.end());
        sizes.push_back(orbit_closure_size(a, w, cap));
    }
    return sizes;
}

}  // namespace mealy
