#pragma once

#include <string>

#include <json.hpp>

#include "mealy/burnside.hpp"

namespace mealy {

// Every report starts from the same header: tool name/version, schema
// version, and the FNV-1a digest of the input automaton.

nlohmann::json classification_report(const MealyAutomaton& a);

// Per-level census: representative, size and parent edge label of every
// component, plus the level totals.
nlohmann::json orbit_tree_report(const OrbitTree& t);

// Trunk data, stems, and (when provided) the class partition and counting
// tables.
nlohmann::json jungle_report(const MealyAutomaton& a, const JungleTree& jt,
                             const StemClasses* cls = nullptr,
                             const SeqPeqTables* tables = nullptr);

nlohmann::json budgets_to_json(const Budgets& b);
Budgets budgets_from_json(const nlohmann::json& j);

nlohmann::json certificate_report(const MealyAutomaton& a, const Certificate& c,
                                  const Budgets& b);

// Re-verifies a serialized certificate against a freshly parsed automaton:
// digest match, classification match, and the branch evidence re-checked
// from scratch (witness branch sizes, growth sequences, jungle structure,
// identity-acting witnesses, rewrite action equality).  Returns false and
// fills `why` on the first discrepancy.
bool reverify_certificate(const nlohmann::json& report, const MealyAutomaton& a,
                          std::string* why = nullptr);

}  // namespace mealy
