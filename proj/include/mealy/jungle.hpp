#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mealy/orbit_tree.hpp"

namespace mealy {

// A jungle tree: a finite initial 1-self-liftable trunk whose bottom has at
// least two legitimate children, all labeled 1.  Below the trunk the liftable
// descendants form a regular tree of the given arity; that regularity is
// spot-verified to the available depth at construction.
//
// Stems are the words of the trunk bottom.  The follower table drives every
// j-word question: a word longer than the trunk is a j-word exactly when its
// first n states form a stem and each further state is a recorded follower
// of the current length-n window.
//
// Like OrbitTree, a JungleTree references the automaton it was found in; the
// automaton must outlive the jungle at a stable address.
class JungleTree {
public:
    struct Follower {
        std::uint8_t state;  // appended state
        int next;            // stem index of the shifted window
    };

    const MealyAutomaton& automaton() const { return *aut_; }
    int trunk_length() const { return trunk_len_; }
    const std::vector<std::uint64_t>& trunk_labels() const { return trunk_labels_; }
    int arity() const { return arity_; }
    int verified_depth() const { return verified_depth_; }
    const Component& stem_component() const { return trunk_comps_.back(); }
    const std::vector<StateWord>& stems() const { return stem_component().members; }
    std::size_t stem_count() const { return stems().size(); }
    const std::vector<Follower>& followers(int stem_idx) const { return followers_[stem_idx]; }

    // Index of w in the sorted stem list, or -1.
    int stem_index(const StateWord& w) const;
    bool is_j_word(const StateWord& u) const;
    // Window reached by reading `tail` from window `win`, or -1 if the walk
    // leaves the jungle.
    int walk(int win, const StateWord& tail) const;

private:
    friend std::vector<JungleTree> find_jungle_trees(const MealyAutomaton&, const OrbitTree&,
                                                     int);
    const MealyAutomaton* aut_ = nullptr;
    int trunk_len_ = 0;
    int arity_ = 0;
    int verified_depth_ = 0;
    std::vector<std::uint64_t> trunk_labels_;
    std::vector<Component> trunk_comps_;  // trunk bottom components, levels 1..n
    std::vector<std::vector<Follower>> followers_;
};

// All jungle trunks of length <= max_trunk in the tree (which must be built
// to depth >= max_trunk + 2), ordered by trunk length then representative.
std::vector<JungleTree> find_jungle_trees(const MealyAutomaton& a, const OrbitTree& t,
                                          int max_trunk);

// u is cyclic when every power of u is a j-word; a single power long enough
// to wrap all length-n windows decides.
bool is_cyclic_j_word(const JungleTree& jt, const StateWord& u);

// Deterministic greedy walk (always the first follower) until a length-n
// window repeats; returns the word between the two occurrences.
StateWord find_cyclic_j_word(const JungleTree& jt);

// Cursor over the liana rooted at a stem: step(k) follows the k-th follower
// (sorted by appended state).  Throws ChoiceOutOfRange for k >= arity.
class LianaCursor {
public:
    LianaCursor(const JungleTree& jt, int start_stem);
    int arity() const { return jt_->arity(); }
    void step(int choice);
    const StateWord& word() const { return word_; }       // full walked word
    int window() const { return win_; }                   // current stem index
    std::size_t length() const { return word_.size(); }
private:
    const JungleTree* jt_;
    StateWord word_;
    int win_;
};

// Ubiquity: given a j-word t.u.v, finds w such that t.u.v.w.u is again a
// j-word.  Shortest w, ties broken lexicographically.  Throws CapExceeded
// if no w of length <= cap exists (the pigeonhole budget n(1+|Q|^n) always
// suffices).
StateWord find_recurrence(const JungleTree& jt, const StateWord& t, const StateWord& u,
                          const StateWord& v, std::size_t cap);

// rho_w is the identity on the whole of Sigma* iff every member of the
// component of w fixes each single letter.  Sound and complete for
// reversible automata.
bool is_identity_action(const MealyAutomaton& a, const StateWord& w,
                        std::size_t cap = kDefaultComponentCap);

struct EquivalenceBudget {
    std::size_t node_cap = 100'000;    // BFS nodes per search
    std::size_t length_cap = 4096;     // max witness length
    int fingerprint_depth = 6;         // letters, for action dedup
};

// Searches a bridge s with u.s.v a j-word and rho_{u.s} the identity
// (u, v stems).  Bounded BFS by length, ties lexicographic; every returned
// witness is re-verified exactly.  nullopt when the budget runs out.
std::optional<StateWord> stem_equivalent(const JungleTree& jt, const StateWord& u,
                                         const StateWord& v,
                                         const EquivalenceBudget& budget = {});

// u and v share a stem-predecessor: some stem s has both s.u and s.v
// j-words.  One step of the wedge relation (its transitive closure refines
// stem equivalence).
bool wedge_related(const JungleTree& jt, const StateWord& u, const StateWord& v);

struct WitnessEdge {
    int from = 0;        // stem indices
    int to = 0;
    StateWord bridge;    // from . bridge . to is a j-word, rho_{from.bridge} = id
};

struct StemClasses {
    std::vector<std::vector<int>> classes;   // sorted stem indices, classes sorted by first member
    std::vector<int> class_of;               // stem index -> class index
    std::vector<WitnessEdge> witnesses;      // verified, both directions per linked pair
    std::size_t failed_searches = 0;         // merge attempts that hit the budget
};

// Partition of the stems into equivalence classes: wedge closure first, then
// bounded merge searches between class representatives until stable.  Class
// sizes must come out equal; otherwise IncompletePartition is thrown.
StemClasses stem_classes(const JungleTree& jt, const EquivalenceBudget& budget = {},
                         std::size_t order_cap = 256);

// Composes stored witness edges along a path from stem `from` to stem `to`
// inside one class; returns the (verified) combined bridge.
StateWord compose_witness(const JungleTree& jt, const StemClasses& cls, int from, int to);

struct SeqPeqTables {
    std::vector<std::uint64_t> s_eq;  // S_eq(1..n): letters extending a prefix inside a class
    std::vector<std::uint64_t> p_eq;  // P_eq(1..n): classes containing a given prefix
};

// Suffix/prefix counting tables; verifies well-definedness across all
// prefixes and classes (WellDefinednessViolation otherwise).  For every
// level, s_eq * p_eq equals the trunk label.
SeqPeqTables seq_peq_tables(const JungleTree& jt, const StemClasses& cls);

// A word w with u.w.x a j-word and rho_w the identity (u a j-word, x a
// state).  Built from the class witness table; exists whenever every class
// reaches every first letter (prime size).  Throws CapExceeded when the
// witness machinery cannot reach x within budget.
StateWord identity_continuation(const JungleTree& jt, const StemClasses& cls,
                                const StateWord& u, std::uint8_t x,
                                const EquivalenceBudget& budget = {});

}  // namespace mealy
