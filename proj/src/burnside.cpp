#include "mealy/burnside.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace mealy {

namespace {

StateWord pow_word(const StateWord& u, int m) {
    StateWord out;
    out.reserve(u.size() * static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) out.insert(out.end(), u.begin(), u.end());
    return out;
}

bool fixes_letters(const MealyAutomaton& a, const StateWord& w) {
    for (int i = 0; i < a.letters(); ++i)
        if (act_rho_letter(a, w, static_cast<std::uint8_t>(i)) != i) return false;
    return true;
}

}  // namespace

OrderResult order_of(const MealyAutomaton& a, const StateWord& u, int cap,
                     std::size_t component_cap) {
    if (u.empty()) throw ValidationError("order_of needs a non-empty word");
    if (!is_invertible(a)) throw NotInvertible();
    if (!is_reversible(a)) throw NotReversible();
    OrderResult r;
    std::size_t run = 0;  // trailing strict component-size increases
    for (int m = 1; m <= cap; ++m) {
        StateWord w = pow_word(u, m);
        std::vector<StateWord> members;
        try {
            members = orbit_closure(a, w, component_cap);
        } catch (const ComponentTooLarge&) {
            // Growth that plateaus periodically can blow any component cap
            // without eight strict increases in a row; that is still only a
            // budget verdict, not evidence either way.
            r.verdict = OrderResult::Verdict::ExceedsCap;
            return r;
        }
        r.growth.push_back(members.size());
        const std::size_t k = r.growth.size();
        if (k >= 2) run = r.growth[k - 1] > r.growth[k - 2] ? run + 1 : 0;
        if (std::all_of(members.begin(), members.end(),
                        [&](const StateWord& q) { return fixes_letters(a, q); })) {
            r.verdict = OrderResult::Verdict::Finite;
            r.order = m;
            return r;
        }
        if (run >= 8) {
            r.verdict = OrderResult::Verdict::InfiniteWitness;
            return r;
        }
    }
    r.verdict = OrderResult::Verdict::ExceedsCap;
    return r;
}

std::uint64_t order_oracle(const MealyAutomaton& a, const StateWord& u, int k) {
    if (!is_invertible(a)) throw NotInvertible();
    if (k < 0) throw ValidationError("order_oracle needs k >= 0");
    std::size_t space = 1;
    for (int i = 0; i < k; ++i) {
        space *= static_cast<std::size_t>(a.letters());
        if (space > 20'000'000)
            throw LevelTooLarge("level " + std::to_string(k) + " does not fit in memory");
    }
    std::vector<std::uint32_t> perm(space);
    LetterWord w(static_cast<std::size_t>(k));
    for (std::size_t idx = 0; idx < space; ++idx) {
        std::size_t rest = idx;
        for (int p = k - 1; p >= 0; --p) {
            w[p] = static_cast<std::uint8_t>(rest % a.letters());
            rest /= a.letters();
        }
        LetterWord out = act_rho(a, u, w);
        std::size_t enc = 0;
        for (int p = 0; p < k; ++p) enc = enc * a.letters() + out[p];
        perm[idx] = static_cast<std::uint32_t>(enc);
    }
    std::vector<char> seen(space, 0);
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < space; ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = 1;
            ++len;
        }
        order = std::lcm(order, len);
    }
    return order;
}

StateWord rewrite_as_j_word(const JungleTree& jt, const StemClasses& cls, const StateWord& u,
                            std::size_t cap, const EquivalenceBudget& budget) {
    StateWord j;
    for (std::uint8_t x : u) {
        StateWord w = identity_continuation(jt, cls, j, x, budget);
        j.insert(j.end(), w.begin(), w.end());
        j.push_back(x);
        if (j.size() > cap) throw CapExceeded("rewriting exceeded the length cap");
    }
    if (!jt.is_j_word(j)) throw DecompositionViolation("rewriting left the jungle");
    return j;
}

CyclicReduction cyclic_reduction(const JungleTree& jt, const StemClasses& cls,
                                 const StateWord& u, std::size_t cap,
                                 const EquivalenceBudget& budget) {
    if (u.empty()) throw ValidationError("cyclic reduction needs a non-empty word");
    const std::size_t n = static_cast<std::size_t>(jt.trunk_length());
    StateWord j;
    std::vector<std::size_t> boundaries{0};
    std::map<StateWord, int> first_key;  // length-n window ahead -> boundary
    std::size_t scanned = 0;
    for (;;) {
        for (std::uint8_t x : u) {
            StateWord w = identity_continuation(jt, cls, j, x, budget);
            j.insert(j.end(), w.begin(), w.end());
            j.push_back(x);
            if (j.size() > cap) throw CapExceeded("cyclic reduction exceeded the length cap");
        }
        boundaries.push_back(j.size());
        while (scanned < boundaries.size() && boundaries[scanned] + n <= j.size()) {
            StateWord key(j.begin() + boundaries[scanned],
                          j.begin() + boundaries[scanned] + n);
            auto [it, fresh] = first_key.try_emplace(key, static_cast<int>(scanned));
            if (!fresh) {
                const int lo = it->second, hi = static_cast<int>(scanned);
                StateWord v(j.begin() + boundaries[lo], j.begin() + boundaries[hi]);
                if (!is_cyclic_j_word(jt, v))
                    throw DecompositionViolation("reduction produced a non-cyclic word");
                return {v, hi - lo};
            }
            ++scanned;
        }
    }
}

std::uint64_t uniform_order_bound(const JungleTree& jt, std::size_t sample_budget,
                                  int order_cap) {
    const int max_len = jt.trunk_length() + static_cast<int>(jt.stem_count());
    std::uint64_t best = 0;
    std::size_t explored = 0;
    std::set<StateWord> tested;
    struct Item {
        int win;
        StateWord word;
    };
    for (std::size_t start = 0; start < jt.stem_count(); ++start) {
        std::vector<Item> stack{{static_cast<int>(start), {}}};
        while (!stack.empty()) {
            Item item = std::move(stack.back());
            stack.pop_back();
            if (++explored > sample_budget) {
                if (best == 0) throw CapExceeded("no cyclic j-word sampled within budget");
                return best;
            }
            if (!item.word.empty() && item.win == static_cast<int>(start) &&
                tested.insert(item.word).second && is_cyclic_j_word(jt, item.word)) {
                bool found = false;
                for (int m = 1; m <= order_cap && !found; ++m)
                    if (is_identity_action(jt.automaton(), pow_word(item.word, m))) {
                        best = std::max<std::uint64_t>(best, m);
                        found = true;
                    }
                if (!found) throw CapExceeded("cyclic j-word order exceeds the cap");
            }
            if (static_cast<int>(item.word.size()) >= max_len) continue;
            for (const auto& f : jt.followers(item.win)) {
                StateWord next = item.word;
                next.push_back(f.state);
                stack.push_back({f.next, std::move(next)});
            }
        }
    }
    if (best == 0) throw CapExceeded("no cyclic j-word sampled within budget");
    return best;
}

namespace {

std::string describe_labels(const std::vector<std::uint64_t>& labels) {
    std::ostringstream os;
    for (std::size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
    return os.str();
}

}  // namespace

Certificate certify(const MealyAutomaton& a, const Budgets& budgets) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

    Certificate c;
    c.classification = classify(a);
    std::vector<std::string> notes;

    const char* failed = nullptr;
    if (!c.classification.invertible) failed = "invertible";
    else if (!c.classification.reversible) failed = "reversible";
    else if (!c.classification.connected) failed = "connected";
    else if (!c.classification.prime_size) failed = "prime_size";
    if (failed) {
        c.branch = Certificate::Branch::Rejected;
        c.failed_precondition = failed;
        c.rationale = "the certified statement covers connected invertible-reversible automata "
                      "of prime size; precondition '" + std::string(failed) + "' fails here";
        return c;
    }

    if (!c.classification.bireversible) {
        c.branch = Certificate::Branch::NotBireversible;
        c.rationale = "invertible-reversible but not bireversible: a known classification "
                      "result already rules out Burnside groups for this family, so the "
                      "verdict is by citation, not computation";
        return c;
    }

    // Infinite-order branch: an active self-liftable periodic branch, with
    // the component growth of the witness's powers re-verified.
    try {
        auto w = find_active_self_liftable_witness(a, budgets.witness_max_len,
                                                   budgets.tree_depth, budgets.component_cap);
        if (w && w->kind == BranchWitness::Kind::ActiveSelfLiftable) {
            StateWord prefix;
            for (int level = 1; level <= w->explored_depth; ++level) {
                prefix.push_back(w->word[(level - 1) % w->word.size()]);
                if (orbit_closure_size(a, prefix, budgets.component_cap) != w->sizes[level - 1])
                    throw DecompositionViolation("witness branch sizes failed re-verification");
            }
            c.witness = *w;
            c.growth = power_component_sizes(a, w->word, budgets.growth_powers,
                                             budgets.component_cap);
            c.branch = Certificate::Branch::InfiniteOrderElement;
            c.rationale = "the periodic branch of " + format_state_word(a, w->word, ".") +
                          " is self-liftable and stays active to depth " +
                          std::to_string(w->explored_depth) +
                          "; its power components keep growing, so the element has infinite "
                          "order and the group is not Burnside of any exponent";
            return c;
        }
        if (w) notes.push_back("active branch suspect " + format_state_word(a, w->word, ".") +
                               " found but not self-liftably confirmed");
        else notes.push_back("no active self-liftable branch among words of length <= " +
                             std::to_string(budgets.witness_max_len));
    } catch (const Error& e) {
        notes.push_back(std::string("witness search aborted: ") + e.what());
    }

    // Finite-group branch: jungle machinery.
    try {
        if (elapsed() > budgets.soft_deadline_s) throw CapExceeded("soft deadline reached");
        OrbitTree tree = OrbitTree::build(a, budgets.max_trunk + 2, budgets.component_cap);
        auto jungles = find_jungle_trees(a, tree, budgets.max_trunk);
        if (jungles.empty())
            notes.push_back("no jungle tree with trunk length <= " +
                            std::to_string(budgets.max_trunk));
        for (std::size_t ji = 0; ji < jungles.size(); ++ji) {
            if (elapsed() > budgets.soft_deadline_s) {
                notes.push_back("soft deadline reached during jungle processing");
                break;
            }
            const JungleTree& jt = jungles[ji];
            try {
                auto cls = stem_classes(jt, budgets.equivalence,
                                        static_cast<std::size_t>(budgets.order_cap));
                auto tables = seq_peq_tables(jt, cls);
                for (const auto& members : cls.classes) {
                    std::set<std::uint8_t> firsts;
                    for (int m : members) firsts.insert(jt.stems()[m].front());
                    if (static_cast<int>(firsts.size()) != a.states())
                        throw WellDefinednessViolation(
                            "a class's first letters miss part of the stateset");
                }
                JungleEvidence ev;
                ev.jungle_index = static_cast<int>(ji);
                ev.trunk_length = jt.trunk_length();
                ev.trunk_labels = jt.trunk_labels();
                ev.arity = jt.arity();
                ev.stems = jt.stems();
                ev.classes = cls.classes;
                ev.witnesses = cls.witnesses;
                ev.s_eq = tables.s_eq;
                ev.p_eq = tables.p_eq;
                std::mt19937 rng(budgets.rewrite_seed);
                for (int i = 0; i < budgets.rewrite_samples; ++i) {
                    std::uniform_int_distribution<int> len_d(1, 4);
                    std::uniform_int_distribution<int> st_d(0, a.states() - 1);
                    StateWord word(static_cast<std::size_t>(len_d(rng)));
                    for (auto& x : word) x = static_cast<std::uint8_t>(st_d(rng));
                    ev.rewrites.emplace_back(
                        word, rewrite_as_j_word(jt, cls, word, budgets.rewrite_cap,
                                                budgets.equivalence));
                }
                ev.uniform_bound = uniform_order_bound(jt, budgets.sample_budget);
                c.jungle = std::move(ev);
                c.branch = Certificate::Branch::FiniteGroupEvidence;
                c.rationale =
                    "a jungle tree with trunk labels (" + describe_labels(jt.trunk_labels()) +
                    ") exists; every word rewrites to an action-equal j-word, cyclic j-words "
                    "have uniformly bounded order, and a bounded-exponent residually finite "
                    "group is finite, so no quotient is an infinite Burnside group";
                return c;
            } catch (const Error& e) {
                notes.push_back("jungle " + std::to_string(ji) + " failed: " + e.what());
            }
        }
    } catch (const Error& e) {
        notes.push_back(std::string("jungle search aborted: ") + e.what());
    }

    c.branch = Certificate::Branch::Inconclusive;
    std::ostringstream report;
    report << "budgets: tree depth " << budgets.tree_depth << ", witness length <= "
           << budgets.witness_max_len << ", max trunk " << budgets.max_trunk
           << ", order cap " << budgets.order_cap << ", soft deadline "
           << budgets.soft_deadline_s << " s";
    for (const auto& n : notes) report << "; " << n;
    c.budget_report = report.str();
    c.rationale = "no definitive branch within the configured budgets";
    return c;
}

}  // namespace mealy
