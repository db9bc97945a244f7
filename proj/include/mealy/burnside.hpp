#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mealy/jungle.hpp"

namespace mealy {

// Order of the action rho_u, decided by testing powers.
struct OrderResult {
    enum class Verdict {
        Finite,           // smallest identity power found
        ExceedsCap,       // no identity power within the cap, no growth signal
        InfiniteWitness,  // component sizes along powers keep strictly growing
    };
    Verdict verdict = Verdict::ExceedsCap;
    int order = 0;                     // set for Finite
    std::vector<std::size_t> growth;   // |component(u^m)| for m = 1.. (evidence)
};

// Tries m = 1..cap for the smallest identity power of u.  A run of eight
// consecutive strict component-size increases is reported as an
// InfiniteWitness (sizes divide along powers, so each strict step at least
// doubles); the certifier treats that as strong evidence only alongside an
// active self-liftable branch.  Exceeding either cap (powers or component
// words) yields ExceedsCap.
OrderResult order_of(const MealyAutomaton& a, const StateWord& u, int cap = 256,
                     std::size_t component_cap = kDefaultComponentCap);

// Order of the permutation induced by u on Sigma^k, by explicit cycle
// decomposition.  Test oracle for order_of; throws LevelTooLarge when
// |Sigma|^k words would not fit the memory budget.
std::uint64_t order_oracle(const MealyAutomaton& a, const StateWord& u, int k);

// A j-word acting exactly like u, built letter-by-letter: before appending
// the next letter of u, an identity-acting bridge keeps the word inside the
// jungle.  Throws CapExceeded when the output would exceed `cap` states.
StateWord rewrite_as_j_word(const JungleTree& jt, const StemClasses& cls, const StateWord& u,
                            std::size_t cap = 10'000,
                            const EquivalenceBudget& budget = {});

struct CyclicReduction {
    StateWord word;     // v, a cyclic j-word
    int exponent = 0;   // v acts like u^exponent
};

// Concatenates successive j-word rewritings of u until two of the piece
// boundaries see the same length-n window ahead; the words between them form
// a cyclic j-word acting like u^(j-i), with j-i <= |Q|^n by pigeonhole.
CyclicReduction cyclic_reduction(const JungleTree& jt, const StemClasses& cls,
                                 const StateWord& u, std::size_t cap = 100'000,
                                 const EquivalenceBudget& budget = {});

// Maximum observed order of rho_v over cyclic j-words read off closed walks
// in the followers graph (exhaustive for small graphs, budget-truncated
// otherwise).  The constant it estimates depends only on the stem component.
std::uint64_t uniform_order_bound(const JungleTree& jt, std::size_t sample_budget = 5'000,
                                  int order_cap = 512);

struct Budgets {
    int tree_depth = 6;           // orbit tree depth for the witness search
    int max_trunk = 3;            // jungle trunk search bound
    int witness_max_len = 4;      // periodic-branch word length bound
    int order_cap = 256;
    int growth_powers = 8;        // powers checked for the growth evidence
    std::size_t component_cap = kDefaultComponentCap;
    std::size_t rewrite_cap = 10'000;
    std::size_t sample_budget = 2'000;
    int rewrite_samples = 8;      // sample words rewritten for the evidence
    unsigned rewrite_seed = 12345;
    double soft_deadline_s = 60.0;
    EquivalenceBudget equivalence;
};

// Everything a FiniteGroupEvidence verdict rests on, reconstructible and
// re-verifiable against the automaton alone.
struct JungleEvidence {
    int jungle_index = 0;  // position in find_jungle_trees(aut, ., max_trunk)
    int trunk_length = 0;
    std::vector<std::uint64_t> trunk_labels;
    int arity = 0;
    std::vector<StateWord> stems;
    std::vector<std::vector<int>> classes;       // stem indices
    std::vector<WitnessEdge> witnesses;
    std::vector<std::uint64_t> s_eq;
    std::vector<std::uint64_t> p_eq;
    std::uint64_t uniform_bound = 0;
    std::vector<std::pair<StateWord, StateWord>> rewrites;  // (u, j-word rewrite)
};

struct Certificate {
    enum class Branch {
        Rejected,             // classification precondition failed
        NotBireversible,      // settled by the cited external result
        InfiniteOrderElement, // witness word of infinite order
        FiniteGroupEvidence,  // jungle machinery succeeded
        Inconclusive,         // budgets exhausted without a verdict
    };
    Branch branch = Branch::Inconclusive;
    Classification classification;
    std::string rationale;                  // human-readable, cites the theorem used
    std::string failed_precondition;        // Rejected: which check failed
    std::optional<BranchWitness> witness;   // InfiniteOrderElement
    std::vector<std::size_t> growth;        // |component(u^m)| for the witness
    std::optional<JungleEvidence> jungle;   // FiniteGroupEvidence
    std::string budget_report;              // Inconclusive
};

// The certification pipeline: classify and reject, settle non-bireversible
// by citation, search an active self-liftable periodic branch (infinite
// order), then the jungle machinery (finite-group evidence), otherwise
// report the exhausted budgets.  Never throws; failures land in
// Inconclusive.
Certificate certify(const MealyAutomaton& a, const Budgets& budgets = {});

}  // namespace mealy
