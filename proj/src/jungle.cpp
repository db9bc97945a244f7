#include "mealy/jungle.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace mealy {

namespace {

StateWord pow_word(const StateWord& u, int m) {
    StateWord out;
    out.reserve(u.size() * static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out.insert(out.end(), u.begin(), u.end());
    return out;
}

StateWord concat(std::initializer_list<const StateWord*> parts) {
    StateWord out;
    for (const StateWord* p : parts) out.insert(out.end(), p->begin(), p->end());
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace

int JungleTree::stem_index(const StateWord& w) const {
    const auto& s = stems();
    auto it = std::lower_bound(s.begin(), s.end(), w);
    if (it == s.end() || *it != w) return -1;
    return static_cast<int>(it - s.begin());
}

int JungleTree::walk(int win, const StateWord& tail) const {
    for (std::uint8_t x : tail) {
        const auto& fs = followers_[win];
        int next = -1;
        for (const auto& f : fs)
            if (f.state == x) {
                next = f.next;
                break;
            }
        if (next < 0) return -1;
        win = next;
    }
    return win;
}

bool JungleTree::is_j_word(const StateWord& u) const {
    const std::size_t n = static_cast<std::size_t>(trunk_len_);
    if (u.empty()) return true;
    if (u.size() <= n) return trunk_comps_[u.size() - 1].contains(u);
    StateWord head(u.begin(), u.begin() + n);
    int win = stem_index(head);
    if (win < 0) return false;
    StateWord tail(u.begin() + n, u.end());
    return walk(win, tail) >= 0;
}

std::vector<JungleTree> find_jungle_trees(const MealyAutomaton& a, const OrbitTree& t,
                                          int max_trunk) {
    if (max_trunk < 1) throw ValidationError("max_trunk must be >= 1");
    if (t.depth() < max_trunk + 2)
        throw ValidationError("orbit tree must be built to depth >= max_trunk + 2");
    std::vector<JungleTree> found;

    // Depth-first over chains of legitimate edges starting at the root.
    struct Frame {
        std::vector<int> chain;
    };
    std::vector<std::vector<int>> stack;
    {
        std::vector<int> roots = t.vertex(0).child_edges;
        for (auto it = roots.rbegin(); it != roots.rend(); ++it) stack.push_back({*it});
    }
    std::vector<std::vector<int>> qualifying;
    while (!stack.empty()) {
        std::vector<int> chain = std::move(stack.back());
        stack.pop_back();
        const int last = chain.back();
        auto legit = legitimate_children(t, last);
        const bool all_one =
            !legit.empty() && std::all_of(legit.begin(), legit.end(), [&](int e) {
                return t.edge(e).label == 1;
            });
        if (legit.size() >= 2 && all_one) qualifying.push_back(chain);
        if (static_cast<int>(chain.size()) < max_trunk)
            for (auto it = legit.rbegin(); it != legit.rend(); ++it) {
                auto ext = chain;
                ext.push_back(*it);
                stack.push_back(std::move(ext));
            }
    }
    std::sort(qualifying.begin(), qualifying.end(), [&](const auto& l, const auto& r) {
        if (l.size() != r.size()) return l.size() < r.size();
        return t.vertex(t.edge(l.back()).bottom).comp.representative() <
               t.vertex(t.edge(r.back()).bottom).comp.representative();
    });

    for (const auto& chain : qualifying) {
        JungleTree jt;
        jt.aut_ = &a;
        jt.trunk_len_ = static_cast<int>(chain.size());
        for (int e : chain) {
            jt.trunk_labels_.push_back(t.edge(e).label);
            jt.trunk_comps_.push_back(t.vertex(t.edge(e).bottom).comp);
        }
        const int last = chain.back();
        auto legit = legitimate_children(t, last);
        jt.arity_ = static_cast<int>(legit.size());
        const std::size_t n = chain.size();

        // Follower table from the legitimate children: each of their words
        // d = p.x contributes "x may follow p", with the shifted window d[1..].
        jt.followers_.assign(jt.stem_count(), {});
        for (int e : legit)
            for (const auto& d : t.vertex(t.edge(e).bottom).comp.members) {
                StateWord head(d.begin(), d.begin() + n);
                StateWord shifted(d.begin() + 1, d.end());
                int p = jt.stem_index(head);
                int nx = jt.stem_index(shifted);
                if (p < 0 || nx < 0)
                    throw DecompositionViolation("legitimate child word escapes the stems");
                jt.followers_[p].push_back({d[n], nx});
            }
        for (auto& fs : jt.followers_) {
            std::sort(fs.begin(), fs.end(),
                      [](const auto& l, const auto& r) { return l.state < r.state; });
            if (static_cast<int>(fs.size()) != jt.arity_)
                throw DecompositionViolation("stem follower count differs from the arity");
        }

        // Spot-verify regularity below the trunk to the available depth:
        // every liftable descendant vertex branches into exactly `arity`
        // liftable children, all labeled 1.
        std::vector<int> frontier{t.edge(last).bottom};
        int verified = 0;
        while (!frontier.empty() &&
               t.vertex(frontier.front()).level < t.depth()) {
            std::vector<int> next;
            for (int v : frontier) {
                int liftable_count = 0;
                for (int e : t.vertex(v).child_edges)
                    if (is_liftable(t, e, last)) {
                        if (t.edge(e).label != 1)
                            throw DecompositionViolation("jungle descendant edge label is not 1");
                        ++liftable_count;
                        next.push_back(t.edge(e).bottom);
                    }
                if (liftable_count != jt.arity_)
                    throw DecompositionViolation("jungle descendant branching differs from arity");
            }
            ++verified;
            frontier = std::move(next);
        }
        jt.verified_depth_ = verified;
        found.push_back(std::move(jt));
    }
    return found;
}

bool is_cyclic_j_word(const JungleTree& jt, const StateWord& u) {
    if (u.empty()) return false;
    const std::size_t n = static_cast<std::size_t>(jt.trunk_length());
    const int m = static_cast<int>((n + u.size() + u.size() - 1) / u.size()) + 1;
    return jt.is_j_word(pow_word(u, m));
}

StateWord find_cyclic_j_word(const JungleTree& jt) {
    std::vector<int> first_seen(jt.stem_count(), -1);
    int cur = 0;
    first_seen[0] = 0;
    StateWord appended;
    for (std::size_t step = 1; step <= jt.stem_count() + 1; ++step) {
        const auto& f = jt.followers(cur).front();
        appended.push_back(f.state);
        cur = f.next;
        if (first_seen[cur] >= 0)
            return StateWord(appended.begin() + first_seen[cur], appended.end());
        first_seen[cur] = static_cast<int>(step);
    }
    throw DecompositionViolation("greedy walk failed to repeat a window");
}

LianaCursor::LianaCursor(const JungleTree& jt, int start_stem)
    : jt_(&jt), word_(jt.stems().at(start_stem)), win_(start_stem) {}

void LianaCursor::step(int choice) {
    const auto& fs = jt_->followers(win_);
    if (choice < 0 || choice >= static_cast<int>(fs.size()))
        throw ChoiceOutOfRange("liana choice " + std::to_string(choice) + " out of range");
    word_.push_back(fs[choice].state);
    win_ = fs[choice].next;
}

namespace {

// Shortest w (ties lexicographic) with base.w.target a j-word.
// base must be a j-word.  Length capped; node count bounded by the stems
// once the walk is at least trunk-length deep.
std::optional<StateWord> follow_bridge(const JungleTree& jt, const StateWord& base,
                                       const StateWord& target, std::size_t length_cap) {
    if (!jt.is_j_word(base)) throw ValidationError("bridge search needs a j-word base");
    const std::size_t n = static_cast<std::size_t>(jt.trunk_length());
    struct Node {
        int parent;
        std::uint8_t state;
        int win;       // -1 while base+w is shorter than the trunk
        std::size_t len;
    };
    std::vector<Node> nodes;
    auto rebuild = [&](int id) {
        StateWord w;
        for (int k = id; k > 0; k = nodes[k].parent) w.push_back(nodes[k].state);
        std::reverse(w.begin(), w.end());
        return w;
    };

    int start_win = -1;
    if (base.size() >= n) {
        StateWord window(base.end() - n, base.end());
        start_win = jt.stem_index(window);
        if (start_win < 0) throw ValidationError("j-word window missing from the stems");
    }
    nodes.push_back({-1, 0, start_win, 0});
    std::vector<char> seen(jt.stem_count(), 0);
    if (start_win >= 0) seen[start_win] = 1;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        const Node nd = nodes[id];
        // goal test
        if (nd.win >= 0) {
            if (jt.walk(nd.win, target) >= 0) return rebuild(id);
        } else {
            StateWord w = rebuild(id);
            StateWord probe = concat({&base, &w, &target});
            if (jt.is_j_word(probe)) return w;
        }
        if (nd.len >= length_cap) continue;
        if (nd.win >= 0) {
            for (const auto& f : jt.followers(nd.win)) {
                if (seen[f.next]) continue;
                seen[f.next] = 1;
                nodes.push_back({id, f.state, f.next, nd.len + 1});
                queue.push_back(static_cast<int>(nodes.size()) - 1);
            }
        } else {
            StateWord w = rebuild(id);
            StateWord cur = concat({&base, &w});
            for (int x = 0; x < jt.automaton().states(); ++x) {
                StateWord ext = cur;
                ext.push_back(static_cast<std::uint8_t>(x));
                if (!jt.is_j_word(ext)) continue;
                int win = -1;
                if (ext.size() >= n) {
                    StateWord window(ext.end() - n, ext.end());
                    win = jt.stem_index(window);
                    if (win >= 0) {
                        if (seen[win]) continue;
                        seen[win] = 1;
                    }
                }
                nodes.push_back({id, static_cast<std::uint8_t>(x), win, nd.len + 1});
                queue.push_back(static_cast<int>(nodes.size()) - 1);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

StateWord find_recurrence(const JungleTree& jt, const StateWord& t, const StateWord& u,
                          const StateWord& v, std::size_t cap) {
    StateWord base = concat({&t, &u, &v});
    if (!jt.is_j_word(base)) throw ValidationError("t.u.v is not a j-word");
    auto w = follow_bridge(jt, base, u, cap);
    if (!w) throw CapExceeded("no recurrence word within length " + std::to_string(cap));
    return *w;
}

bool is_identity_action(const MealyAutomaton& a, const StateWord& w, std::size_t cap) {
    auto fixes_letters = [&](const StateWord& m) {
        for (int i = 0; i < a.letters(); ++i)
            if (act_rho_letter(a, m, static_cast<std::uint8_t>(i)) != i) return false;
        return true;
    };
    if (!fixes_letters(w)) return false;
    std::set<StateWord> visited{w};
    std::deque<StateWord> queue{w};
    LetterWord letter(1);
    while (!queue.empty()) {
        StateWord q = std::move(queue.front());
        queue.pop_front();
        for (int i = 0; i < a.letters(); ++i) {
            letter[0] = static_cast<std::uint8_t>(i);
            StateWord next = act_delta(a, letter, q);
            if (visited.insert(next).second) {
                if (visited.size() > cap) throw ComponentTooLarge(cap);
                if (!fixes_letters(next)) return false;
                queue.push_back(std::move(next));
            }
        }
    }
    return true;
}

namespace {

// Smallest m with rho_{w^m} the identity; components of j-word powers stay
// stem-sized, so this is cheap for jungle words.
int order_small(const JungleTree& jt, const StateWord& w, std::size_t order_cap) {
    for (std::size_t m = 1; m <= order_cap; ++m)
        if (is_identity_action(jt.automaton(), pow_word(w, static_cast<int>(m))))
            return static_cast<int>(m);
    throw CapExceeded("order of a cyclic j-word exceeds cap " + std::to_string(order_cap));
}

bool verify_witness(const JungleTree& jt, int from, int to, const StateWord& bridge) {
    const StateWord& u = jt.stems()[from];
    const StateWord& v = jt.stems()[to];
    StateWord uw = concat({&u, &bridge});
    StateWord uwv = concat({&uw, &v});
    return jt.is_j_word(uwv) && is_identity_action(jt.automaton(), uw);
}

// Constructive witness for a wedge pair: s.u and s.v are j-words.  With
// w a bridge making u.w.s a j-word and a = order(u.w.s), the word
// w.s.(u.w.s)^(a-1) bridges u to v with an identity action.
WitnessEdge wedge_witness(const JungleTree& jt, int u_idx, int v_idx, int s_idx,
                          std::size_t order_cap, const EquivalenceBudget& budget) {
    const StateWord& u = jt.stems()[u_idx];
    const StateWord& s = jt.stems()[s_idx];
    auto w = follow_bridge(jt, u, s, budget.length_cap);
    if (!w) throw CapExceeded("wedge witness bridge not found within budget");
    StateWord uws = concat({&u, &*w, &s});
    int a = order_small(jt, uws, order_cap);
    StateWord bridge = concat({&*w, &s});
    StateWord rep = pow_word(uws, a - 1);
    bridge.insert(bridge.end(), rep.begin(), rep.end());
    if (!verify_witness(jt, u_idx, v_idx, bridge))
        throw DecompositionViolation("constructed wedge witness failed verification");
    return {u_idx, v_idx, bridge};
}

// Reversal: from a verified witness u.b.v (rho_{u.b} = id), a recurrence
// back to u gives v.t.u with rho_{v.t} = id.
WitnessEdge reverse_witness(const JungleTree& jt, const WitnessEdge& e, std::size_t order_cap,
                            const EquivalenceBudget& budget) {
    const StateWord& u = jt.stems()[e.from];
    const StateWord& v = jt.stems()[e.to];
    StateWord ubv = concat({&u, &e.bridge, &v});
    auto w = follow_bridge(jt, ubv, u, budget.length_cap);
    if (!w) throw CapExceeded("witness reversal bridge not found within budget");
    StateWord cycle = concat({&ubv, &*w});
    int b = order_small(jt, cycle, order_cap);
    StateWord bridge = *w;
    StateWord rep = pow_word(cycle, b - 1);
    bridge.insert(bridge.end(), rep.begin(), rep.end());
    if (!verify_witness(jt, e.to, e.from, bridge))
        throw DecompositionViolation("constructed reverse witness failed verification");
    return {e.to, e.from, bridge};
}

}  // namespace

std::optional<StateWord> stem_equivalent(const JungleTree& jt, const StateWord& u,
                                         const StateWord& v, const EquivalenceBudget& budget) {
    const MealyAutomaton& a = jt.automaton();
    const int u_idx = jt.stem_index(u);
    if (u_idx < 0 || jt.stem_index(v) < 0)
        throw ValidationError("stem_equivalent arguments must be stems");
    const int K = budget.fingerprint_depth;
    std::size_t space = 1;
    for (int i = 0; i < K; ++i) space *= static_cast<std::size_t>(a.letters());

    // Per-state permutations of Sigma^K; a node's fingerprint is the
    // composite permutation, deduplicated via an id map.
    std::vector<std::vector<std::uint32_t>> state_perm(a.states(),
                                                       std::vector<std::uint32_t>(space));
    {
        LetterWord w(static_cast<std::size_t>(K));
        for (std::size_t idx = 0; idx < space; ++idx) {
            std::size_t rest = idx;
            for (int p = K - 1; p >= 0; --p) {
                w[p] = static_cast<std::uint8_t>(rest % a.letters());
                rest /= a.letters();
            }
            for (int x = 0; x < a.states(); ++x) {
                LetterWord out = act_rho(a, {static_cast<std::uint8_t>(x)}, w);
                std::size_t enc = 0;
                for (int p = 0; p < K; ++p) enc = enc * a.letters() + out[p];
                state_perm[x][idx] = static_cast<std::uint32_t>(enc);
            }
        }
    }
    std::map<std::vector<std::uint32_t>, int> action_ids;
    std::vector<std::vector<std::uint32_t>> actions;
    auto intern = [&](std::vector<std::uint32_t> tbl) {
        auto [it, fresh] = action_ids.try_emplace(std::move(tbl), actions.size());
        if (fresh) actions.push_back(it->first);
        return it->second;
    };
    std::vector<std::uint32_t> ident(space);
    std::iota(ident.begin(), ident.end(), 0);
    const int identity_id = intern(ident);

    std::vector<std::uint32_t> tbl = ident;
    for (std::uint8_t x : u) {
        std::vector<std::uint32_t> nxt(space);
        for (std::size_t i = 0; i < space; ++i) nxt[i] = state_perm[x][tbl[i]];
        tbl = std::move(nxt);
    }

    struct Node {
        int parent;
        std::uint8_t state;
        int win;
        int action;
        std::size_t len;
    };
    std::vector<Node> nodes{{-1, 0, u_idx, intern(tbl), 0}};
    std::set<std::pair<int, int>> visited{{u_idx, nodes[0].action}};
    std::deque<int> queue{0};
    auto rebuild = [&](int id) {
        StateWord w;
        for (int k = id; k > 0; k = nodes[k].parent) w.push_back(nodes[k].state);
        std::reverse(w.begin(), w.end());
        return w;
    };
    while (!queue.empty()) {
        int id = queue.front();
        queue.pop_front();
        const Node nd = nodes[id];
        if (nd.action == identity_id && jt.walk(nd.win, v) >= 0) {
            StateWord s = rebuild(id);
            StateWord us = concat({&u, &s});
            if (is_identity_action(a, us)) return s;
        }
        if (nd.len >= budget.length_cap || nodes.size() >= budget.node_cap) continue;
        for (const auto& f : jt.followers(nd.win)) {
            const auto& parent_tbl = actions[nd.action];
            std::vector<std::uint32_t> nxt(space);
            for (std::size_t i = 0; i < space; ++i) nxt[i] = state_perm[f.state][parent_tbl[i]];
            int act = intern(std::move(nxt));
            if (!visited.insert({f.next, act}).second) continue;
            nodes.push_back({id, f.state, f.next, act, nd.len + 1});
            queue.push_back(static_cast<int>(nodes.size()) - 1);
        }
    }
    return std::nullopt;
}

bool wedge_related(const JungleTree& jt, const StateWord& u, const StateWord& v) {
    if (jt.stem_index(u) < 0 || jt.stem_index(v) < 0)
        throw ValidationError("wedge_related arguments must be stems");
    for (std::size_t s = 0; s < jt.stem_count(); ++s)
        if (jt.walk(static_cast<int>(s), u) >= 0 && jt.walk(static_cast<int>(s), v) >= 0)
            return true;
    return false;
}

StemClasses stem_classes(const JungleTree& jt, const EquivalenceBudget& budget,
                         std::size_t order_cap) {
    const std::size_t count = jt.stem_count();
    UnionFind uf(count);
    StemClasses out;

    // Wedge closure: every stem reachable from the same predecessor window in
    // exactly n steps is equivalent.  Record spanning pairs for witnesses.
    struct WedgePair {
        int u, v, s;
    };
    std::vector<WedgePair> spanning;
    const int n = jt.trunk_length();
    for (std::size_t s = 0; s < count; ++s) {
        std::set<int> reach{static_cast<int>(s)};
        for (int step = 0; step < n; ++step) {
            std::set<int> next;
            for (int w : reach)
                for (const auto& f : jt.followers(w)) next.insert(f.next);
            reach = std::move(next);
        }
        int first = *reach.begin();
        for (int r : reach)
            if (r != first && uf.unite(first, r))
                spanning.push_back({first, r, static_cast<int>(s)});
    }

    auto merge_pass = [&](const EquivalenceBudget& b) {
        bool merged_any = false;
        bool progress = true;
        while (progress) {
            progress = false;
            std::set<int> reps;
            for (std::size_t i = 0; i < count; ++i) reps.insert(uf.find(static_cast<int>(i)));
            std::vector<int> rep_list(reps.begin(), reps.end());
            for (std::size_t i = 0; i < rep_list.size(); ++i)
                for (std::size_t j = i + 1; j < rep_list.size(); ++j) {
                    int ri = uf.find(rep_list[i]), rj = uf.find(rep_list[j]);
                    if (ri == rj) continue;
                    auto w = stem_equivalent(jt, jt.stems()[ri], jt.stems()[rj], b);
                    if (w) {
                        uf.unite(ri, rj);
                        out.witnesses.push_back({ri, rj, *w});
                        progress = merged_any = true;
                    } else {
                        ++out.failed_searches;
                    }
                }
        }
        return merged_any;
    };
    merge_pass(budget);

    auto class_sizes_equal = [&] {
        std::map<int, std::size_t> sizes;
        for (std::size_t i = 0; i < count; ++i) ++sizes[uf.find(static_cast<int>(i))];
        std::size_t first = sizes.begin()->second;
        return std::all_of(sizes.begin(), sizes.end(),
                           [&](const auto& kv) { return kv.second == first; });
    };
    if (!class_sizes_equal()) {
        EquivalenceBudget wider = budget;
        wider.node_cap *= 4;
        wider.length_cap *= 2;
        merge_pass(wider);
        if (!class_sizes_equal())
            throw IncompletePartition("class sizes unequal after budgeted merging");
    }

    // Materialize verified witnesses for the wedge spanning pairs (both
    // directions), then for the searched merges (reverse direction).
    std::vector<WitnessEdge> edges;
    for (const auto& p : spanning) {
        WitnessEdge e = wedge_witness(jt, p.u, p.v, p.s, order_cap, budget);
        WitnessEdge r = reverse_witness(jt, e, order_cap, budget);
        edges.push_back(std::move(e));
        edges.push_back(std::move(r));
    }
    for (const auto& e : out.witnesses) {
        if (!verify_witness(jt, e.from, e.to, e.bridge))
            throw DecompositionViolation("searched witness failed re-verification");
        edges.push_back(e);
        edges.push_back(reverse_witness(jt, e, order_cap, budget));
    }
    out.witnesses = std::move(edges);

    std::map<int, std::vector<int>> grouped;
    for (std::size_t i = 0; i < count; ++i)
        grouped[uf.find(static_cast<int>(i))].push_back(static_cast<int>(i));
    out.class_of.assign(count, -1);
    for (auto& [root, members] : grouped) {
        int cls = static_cast<int>(out.classes.size());
        for (int m : members) out.class_of[m] = cls;
        out.classes.push_back(std::move(members));
    }
    return out;
}

StateWord compose_witness(const JungleTree& jt, const StemClasses& cls, int from, int to) {
    if (from == to) {
        for (const auto& e : cls.witnesses)
            if (e.from == from && e.to == to) return e.bridge;
        // Leave through any stored edge and come back; the concatenation of
        // two identity bridges around the intermediate stem is again one.
        for (const auto& e : cls.witnesses)
            if (e.from == from && e.to != from) {
                StateWord back = compose_witness(jt, cls, e.to, from);
                StateWord bridge = e.bridge;
                const StateWord& mid = jt.stems()[e.to];
                bridge.insert(bridge.end(), mid.begin(), mid.end());
                bridge.insert(bridge.end(), back.begin(), back.end());
                if (!verify_witness(jt, from, to, bridge))
                    throw DecompositionViolation("composed witness failed verification");
                return bridge;
            }
        throw CapExceeded("no witness loop at the requested stem");
    }
    // BFS over witness edges.
    std::map<int, std::pair<int, const WitnessEdge*>> pred;  // stem -> (prev stem, edge)
    std::deque<int> queue{from};
    pred[from] = {-1, nullptr};
    while (!queue.empty() && !pred.count(to)) {
        int cur = queue.front();
        queue.pop_front();
        for (const auto& e : cls.witnesses) {
            if (e.from != cur || pred.count(e.to)) continue;
            pred[e.to] = {cur, &e};
            queue.push_back(e.to);
        }
    }
    if (!pred.count(to)) throw CapExceeded("no witness path between the requested stems");
    std::vector<const WitnessEdge*> path;
    for (int cur = to; cur != from; cur = pred[cur].first) path.push_back(pred[cur].second);
    std::reverse(path.begin(), path.end());
    StateWord bridge;
    for (std::size_t i = 0; i < path.size(); ++i) {
        bridge.insert(bridge.end(), path[i]->bridge.begin(), path[i]->bridge.end());
        if (i + 1 < path.size()) {
            const StateWord& mid = jt.stems()[path[i]->to];
            bridge.insert(bridge.end(), mid.begin(), mid.end());
        }
    }
    if (!verify_witness(jt, from, to, bridge))
        throw DecompositionViolation("composed witness failed verification");
    return bridge;
}

SeqPeqTables seq_peq_tables(const JungleTree& jt, const StemClasses& cls) {
    const int n = jt.trunk_length();
    SeqPeqTables t;
    for (int level = 1; level <= n; ++level) {
        const std::size_t plen = static_cast<std::size_t>(level - 1);
        // (class, prefix) -> set of next letters; prefix -> set of classes
        std::map<std::pair<int, StateWord>, std::set<std::uint8_t>> next_letters;
        std::map<StateWord, std::set<int>> prefix_classes;
        for (std::size_t i = 0; i < jt.stem_count(); ++i) {
            const StateWord& s = jt.stems()[i];
            StateWord prefix(s.begin(), s.begin() + plen);
            next_letters[{cls.class_of[i], prefix}].insert(s[plen]);
            prefix_classes[prefix].insert(cls.class_of[i]);
        }
        std::uint64_t s_eq = next_letters.begin()->second.size();
        for (const auto& [k, v] : next_letters)
            if (v.size() != s_eq)
                throw WellDefinednessViolation("suffix count varies across classes or prefixes");
        std::uint64_t p_eq = prefix_classes.begin()->second.size();
        for (const auto& [k, v] : prefix_classes)
            if (v.size() != p_eq)
                throw WellDefinednessViolation("class count varies across prefixes");
        if (s_eq * p_eq != jt.trunk_labels()[plen])
            throw WellDefinednessViolation("s_eq * p_eq does not match the trunk label");
        t.s_eq.push_back(s_eq);
        t.p_eq.push_back(p_eq);
    }
    return t;
}

StateWord identity_continuation(const JungleTree& jt, const StemClasses& cls,
                                const StateWord& u, std::uint8_t x,
                                const EquivalenceBudget& budget) {
    if (!jt.is_j_word(u)) throw ValidationError("identity_continuation needs a j-word");
    const std::size_t n = static_cast<std::size_t>(jt.trunk_length());
    // Walk n greedy steps from u; the appended states form a stem s with u.s
    // a j-word.
    StateWord cur = u;
    StateWord appended;
    while (appended.size() < n) {
        if (cur.size() < n) {
            bool extended = false;
            for (int y = 0; y < jt.automaton().states() && !extended; ++y) {
                StateWord ext = cur;
                ext.push_back(static_cast<std::uint8_t>(y));
                if (jt.is_j_word(ext)) {
                    cur = std::move(ext);
                    appended.push_back(static_cast<std::uint8_t>(y));
                    extended = true;
                }
            }
            if (!extended) throw DecompositionViolation("j-word prefix has no extension");
        } else {
            StateWord window(cur.end() - n, cur.end());
            int win = jt.stem_index(window);
            if (win < 0) throw DecompositionViolation("j-word window missing from the stems");
            const auto& f = jt.followers(win).front();
            cur.push_back(f.state);
            appended.push_back(f.state);
        }
    }
    StateWord s(cur.end() - n, cur.end());
    int s_idx = jt.stem_index(s);
    if (s_idx < 0) throw DecompositionViolation("walked window is not a stem");

    // A stem starting with x in the class of s; prime size guarantees one.
    int target = -1;
    for (int m : cls.classes[cls.class_of[s_idx]])
        if (jt.stems()[m].front() == x) {
            target = m;
            break;
        }
    StateWord bridge;
    if (target >= 0) {
        bridge = compose_witness(jt, cls, s_idx, target);
    } else {
        // Fall back to direct searches toward any stem with first letter x.
        for (std::size_t m = 0; m < jt.stem_count() && target < 0; ++m) {
            if (jt.stems()[m].front() != x) continue;
            auto w = stem_equivalent(jt, s, jt.stems()[m], budget);
            if (w) {
                target = static_cast<int>(m);
                bridge = *w;
            }
        }
        if (target < 0)
            throw CapExceeded("no identity continuation toward the requested letter in budget");
    }
    StateWord out = s;
    out.insert(out.end(), bridge.begin(), bridge.end());
    return out;
}

}  // namespace mealy
