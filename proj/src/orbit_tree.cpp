#include "mealy/orbit_tree.hpp"

#include <algorithm>

namespace mealy {

OrbitTree OrbitTree::build(const MealyAutomaton& a, int depth, std::size_t cap) {
    OrbitTree t;
    t.aut_ = &a;
    t.depth_ = depth;
    Vertex root;
    root.comp.level = 0;
    root.comp.members = {StateWord{}};
    t.vertices_.push_back(std::move(root));
    t.levels_.push_back({0});
    for (int level = 0; level < depth; ++level) {
        std::vector<int> next_level;
        for (int v : t.levels_[level]) {
            auto kids = children_components(a, t.vertices_[v].comp, cap);
            for (auto& ke : kids) {
                int child_id = static_cast<int>(t.vertices_.size());
                int edge_id = static_cast<int>(t.edges_.size());
                Vertex cv;
                cv.comp = std::move(ke.child);
                cv.level = level + 1;
                cv.parent_edge = edge_id;
                t.vertices_.push_back(std::move(cv));
                t.edges_.push_back(Edge{v, child_id, ke.label});
                t.vertices_[v].child_edges.push_back(edge_id);
                next_level.push_back(child_id);
            }
        }
        t.levels_.push_back(std::move(next_level));
    }
    return t;
}

int OrbitTree::vertex_of(const StateWord& w) const {
    int v = 0;
    for (std::size_t i = 1; i <= w.size(); ++i) {
        StateWord prefix(w.begin(), w.begin() + i);
        int next = -1;
        for (int e : vertices_[v].child_edges)
            if (vertices_[edges_[e].bottom].comp.contains(prefix)) {
                next = edges_[e].bottom;
                break;
            }
        if (next < 0) throw ValidationError("word not covered by the built tree");
        v = next;
    }
    return v;
}

std::vector<std::uint64_t> TreePath::labels(const OrbitTree& t) const {
    std::vector<std::uint64_t> out;
    out.reserve(edge_ids.size());
    for (int e : edge_ids) out.push_back(t.edge(e).label);
    return out;
}

TreePath path_of(const OrbitTree& t, const StateWord& u) {
    if (static_cast<int>(u.size()) > t.depth())
        throw ValidationError("word longer than the built tree depth");
    TreePath p;
    int v = 0;
    for (std::size_t i = 1; i <= u.size(); ++i) {
        StateWord prefix(u.begin(), u.begin() + i);
        int found = -1;
        for (int e : t.vertex(v).child_edges)
            if (t.vertex(t.edge(e).bottom).comp.contains(prefix)) {
                found = e;
                break;
            }
        if (found < 0) throw ValidationError("word not covered by the built tree");
        p.edge_ids.push_back(found);
        v = t.edge(found).bottom;
    }
    return p;
}

namespace {

bool suffix_in(const Component& shallow, const StateWord& w) {
    StateWord suffix(w.end() - shallow.level, w.end());
    return shallow.contains(suffix);
}

}  // namespace

bool is_liftable(const OrbitTree& t, int e, int f) {
    const Component& be = t.vertex(t.edge(e).bottom).comp;
    const Component& bf = t.vertex(t.edge(f).bottom).comp;
    if (bf.level > be.level) throw ValidationError("is_liftable: f must not be deeper than e");
    return suffix_in(bf, be.representative());
}

bool is_liftable_all_members(const OrbitTree& t, int e, int f) {
    const Component& be = t.vertex(t.edge(e).bottom).comp;
    const Component& bf = t.vertex(t.edge(f).bottom).comp;
    if (bf.level > be.level) throw ValidationError("is_liftable: f must not be deeper than e");
    return std::all_of(be.members.begin(), be.members.end(),
                       [&](const StateWord& w) { return suffix_in(bf, w); });
}

std::vector<int> legitimate_children(const OrbitTree& t, int e) {
    std::vector<int> out;
    for (int c : t.vertex(t.edge(e).bottom).child_edges)
        if (is_liftable(t, c, e)) out.push_back(c);
    return out;
}

bool is_k_self_liftable(const OrbitTree& t, const TreePath& path, int k) {
    if (k < 1) throw ValidationError("k must be >= 1");
    for (std::size_t m = static_cast<std::size_t>(k); m < path.edge_ids.size(); ++m)
        if (!is_liftable(t, path.edge_ids[m], path.edge_ids[m - k])) return false;
    return true;
}

Activity is_active(const std::vector<std::uint64_t>& labels, int explored_depth) {
    const int n = std::min<int>(explored_depth, static_cast<int>(labels.size()));
    for (int i = n / 2; i < n; ++i)
        if (labels[i] > 1) return Activity::Active;
    return Activity::InactiveSoFar;
}

namespace {

bool primitive(const StateWord& u) {
    const std::size_t n = u.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t i = p; i < n && periodic; ++i) periodic = u[i] == u[i - p];
        if (periodic) return false;
    }
    return true;
}

}  // namespace

std::optional<BranchWitness> find_active_self_liftable_witness(
    const MealyAutomaton& a, int max_word_len, int depth, std::size_t cap) {
    StateWord u;
    for (int len = 1; len <= max_word_len; ++len) {
        u.assign(static_cast<std::size_t>(len), 0);
        bool more = true;
        while (more) {
            if (primitive(u)) {
                // Components of the prefixes of u^infinity, one per level.
                std::vector<std::uint64_t> labels;
                std::vector<std::size_t> sizes;
                StateWord prefix;
                std::size_t prev = 1;
                for (int lvl = 1; lvl <= depth; ++lvl) {
                    prefix.push_back(u[(lvl - 1) % len]);
                    std::size_t s = orbit_closure_size(a, prefix, cap);
                    if (s % prev != 0)
                        throw DecompositionViolation("path component size not divisible by parent");
                    labels.push_back(s / prev);
                    sizes.push_back(s);
                    prev = s;
                }
                if (is_active(labels, depth) == Activity::Active) {
                    BranchWitness w;
                    w.word = u;
                    w.labels = std::move(labels);
                    w.sizes = std::move(sizes);
                    w.explored_depth = depth;
                    bool tail_active = false;
                    for (int i = std::max(0, depth - len); i < depth; ++i)
                        if (w.labels[i] > 1) tail_active = true;
                    w.kind = tail_active ? BranchWitness::Kind::ActiveSelfLiftable
                                         : BranchWitness::Kind::InfiniteOrderSuspect;
                    return w;
                }
            }
            // next word in lexicographic order
            int pos = len - 1;
            while (pos >= 0 && u[pos] == a.states() - 1) u[pos--] = 0;
            if (pos < 0)
                more = false;
            else
                ++u[pos];
        }
    }
    return std::nullopt;
}

}  // namespace mealy
