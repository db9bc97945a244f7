#pragma once

#include <string>

#include "mealy/orbit_tree.hpp"

namespace mealy {

// Transition graph: one node per state, edges labeled "in|out".
std::string export_dot(const MealyAutomaton& a);

// Orbit tree: vertices labeled with representative and size, edges with
// their integer label.  Output is deterministic for a given tree.
std::string export_dot(const OrbitTree& t);

}  // namespace mealy
