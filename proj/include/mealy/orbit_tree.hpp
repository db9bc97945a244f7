#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "mealy/components.hpp"

namespace mealy {

// Tree of connected components of the powers A^0, A^1, ..., A^depth.
// Vertex 0 is the root (the trivial component of the empty word); an edge
// connects a component to each component of the next power it projects from,
// labeled with the size ratio.  Children are ordered by representative, so
// construction is deterministic.
//
// The tree references the automaton it was built from; the automaton must
// stay alive (at the same address) for as long as the tree is used.
class OrbitTree {
public:
    struct Vertex {
        Component comp;
        int level = 0;
        int parent_edge = -1;             // -1 for the root
        std::vector<int> child_edges;
    };
    struct Edge {
        int top = 0;      // vertex index, level L
        int bottom = 0;   // vertex index, level L+1
        std::uint64_t label = 0;
    };

    static OrbitTree build(const MealyAutomaton& a, int depth,
                           std::size_t cap = kDefaultComponentCap);

    const MealyAutomaton& automaton() const { return *aut_; }
    int depth() const { return depth_; }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const Vertex& vertex(int v) const { return vertices_[v]; }
    const Edge& edge(int e) const { return edges_[e]; }
    // level of an edge = level of its top vertex
    int edge_level(int e) const { return vertices_[edges_[e].top].level; }
    const std::vector<int>& level_vertices(int level) const { return levels_[level]; }

    // Vertex containing w at level |w| (follows parent-child membership).
    int vertex_of(const StateWord& w) const;

private:
    const MealyAutomaton* aut_ = nullptr;
    int depth_ = 0;
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> levels_;
};

// An initial path: edges from the root downward, edge k at level k.
struct TreePath {
    std::vector<int> edge_ids;
    std::vector<std::uint64_t> labels(const OrbitTree& t) const;
};

// The path of prefixes of u in the tree (requires |u| <= depth).
TreePath path_of(const OrbitTree& t, const StateWord& u);

// e is liftable to f (level(f) <= level(e)) when every word of bottom(e)
// has a word of bottom(f) as a suffix.  For reversible automata a single
// witness decides, so only the representative is checked.
bool is_liftable(const OrbitTree& t, int e, int f);

// Oracle variant checking every member; agrees with is_liftable on
// reversible automata.
bool is_liftable_all_members(const OrbitTree& t, int e, int f);

// Child edges of e whose bottom lifts to e.  Their labels sum to label(e).
std::vector<int> legitimate_children(const OrbitTree& t, int e);

// Every sub-path starting k levels lower lifts edge-by-edge onto the path,
// within the explored length: edge m is liftable to edge m-k for all m >= k.
bool is_k_self_liftable(const OrbitTree& t, const TreePath& path, int k);

enum class Activity { Active, InactiveSoFar };

// Finite-depth activity verdict for a branch with the given edge labels:
// Active when a label > 1 occurs in the deeper half of the explored levels.
Activity is_active(const std::vector<std::uint64_t>& labels, int explored_depth);

struct BranchWitness {
    enum class Kind { ActiveSelfLiftable, InfiniteOrderSuspect };
    StateWord word;                        // u; the branch follows u^infinity
    Kind kind;
    std::vector<std::uint64_t> labels;     // edge labels to the explored depth
    std::vector<std::size_t> sizes;        // component sizes to the explored depth
    int explored_depth = 0;
};

// Searches words u (shortest first, then lexicographic; powers of shorter
// words skipped) whose periodic branch u^infinity stays active to `depth`.
// The branch of a periodic word is |u|-self-liftable by construction.
std::optional<BranchWitness> find_active_self_liftable_witness(
    const MealyAutomaton& a, int max_word_len, int depth,
    std::size_t cap = kDefaultComponentCap);

}  // namespace mealy
