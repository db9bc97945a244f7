#include "mealy/closure.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <unordered_set>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace mealy {

namespace {

int bits_per_state(int states) {
    int b = 1;
    while ((1 << b) < states) ++b;
    return b;
}

using Key = unsigned __int128;

struct KeyHash {
    std::size_t operator()(Key k) const {
        // splitmix64 folded over both halves
        auto mix = [](std::uint64_t z) {
            z += 0x9e3779b97f4a7c15ULL;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            return z ^ (z >> 31);
        };
        return mix(static_cast<std::uint64_t>(k)) ^ (mix(static_cast<std::uint64_t>(k >> 64)) << 1);
    }
};

Key pack(const StateWord& w, int b) {
    Key k = 0;
    for (std::uint8_t x : w) k = (k << b) | x;
    return k;
}

StateWord unpack(Key k, std::size_t len, int b) {
    StateWord w(len);
    const Key mask = (Key(1) << b) - 1;
    for (std::size_t i = 0; i < len; ++i) {
        w[len - 1 - i] = static_cast<std::uint8_t>(k & mask);
        k >>= b;
    }
    return w;
}

// delta_letter applied to a packed word: the letter traverses the word
// front (most significant bits) to back.
Key packed_successor(const MealyAutomaton& a, Key w, int letter, std::size_t len, int b) {
    const Key mask = (Key(1) << b) - 1;
    Key out = 0;
    int cur = letter;
    for (std::size_t k = 0; k < len; ++k) {
        const int shift = static_cast<int>(b * (len - 1 - k));
        const int x = static_cast<int>((w >> shift) & mask);
        out |= Key(a.delta(x, cur)) << shift;
        cur = a.rho(x, cur);
    }
    return out;
}

// Reference implementation: textbook BFS over std::set, successors via the
// public single-letter dual action.  Kept deliberately simple; the packed
// kernel is checked against it.
std::vector<StateWord> closure_serial(const MealyAutomaton& a, const StateWord& seed,
                                      std::size_t cap) {
    std::set<StateWord> visited{seed};
    std::deque<StateWord> queue{seed};
    LetterWord letter(1);
    while (!queue.empty()) {
        StateWord w = std::move(queue.front());
        queue.pop_front();
        for (int i = 0; i < a.letters(); ++i) {
            letter[0] = static_cast<std::uint8_t>(i);
            StateWord next = act_delta(a, letter, w);
            if (visited.insert(next).second) {
                if (visited.size() > cap) throw ComponentTooLarge(cap);
                queue.push_back(std::move(next));
            }
        }
    }
    return {visited.begin(), visited.end()};
}

// Level-synchronous BFS on packed words; the frontier expansion is split
// across OpenMP threads, the visited set is merged between levels.
std::vector<Key> closure_packed(const MealyAutomaton& a, const StateWord& seed,
                                std::size_t cap) {
    const int b = bits_per_state(a.states());
    const std::size_t len = seed.size();
    std::unordered_set<Key, KeyHash> visited;
    std::vector<Key> frontier{pack(seed, b)};
    visited.insert(frontier[0]);
    std::vector<Key> produced;
    while (!frontier.empty()) {
        produced.clear();
        const std::size_t fs = frontier.size();
        const int nl = a.letters();
#ifdef _OPENMP
#pragma omp parallel
        {
            std::vector<Key> local;
            local.reserve(fs * nl / static_cast<std::size_t>(omp_get_num_threads()) + 1);
#pragma omp for nowait schedule(static)
            for (std::ptrdiff_t idx = 0; idx < static_cast<std::ptrdiff_t>(fs); ++idx)
                for (int i = 0; i < nl; ++i)
                    local.push_back(packed_successor(a, frontier[idx], i, len, b));
#pragma omp critical
            produced.insert(produced.end(), local.begin(), local.end());
        }
#else
        for (std::size_t idx = 0; idx < fs; ++idx)
            for (int i = 0; i < nl; ++i)
                produced.push_back(packed_successor(a, frontier[idx], i, len, b));
#endif
        frontier.clear();
        for (Key k : produced)
            if (visited.insert(k).second) {
                if (visited.size() > cap) throw ComponentTooLarge(cap);
                frontier.push_back(k);
            }
    }
    std::vector<Key> keys(visited.begin(), visited.end());
    std::sort(keys.begin(), keys.end());
    return keys;
}

}  // namespace

bool packable(const MealyAutomaton& a, std::size_t word_len) {
    return word_len > 0 && static_cast<std::size_t>(bits_per_state(a.states())) * word_len <= 128;
}

std::vector<StateWord> orbit_closure(const MealyAutomaton& a, const StateWord& seed,
                                     std::size_t cap, ClosurePolicy policy) {
    if (seed.empty()) return {StateWord{}};
    for (std::uint8_t x : seed)
        if (x >= a.states()) throw ValidationError("seed word references unknown state");
    const bool packed = policy != ClosurePolicy::Serial && packable(a, seed.size());
    if (!packed) return closure_serial(a, seed, cap);
    const int b = bits_per_state(a.states());
    std::vector<Key> keys = closure_packed(a, seed, cap);
    std::vector<StateWord> out;
    out.reserve(keys.size());
    for (Key k : keys) out.push_back(unpack(k, seed.size(), b));
    return out;
}

std::size_t orbit_closure_size(const MealyAutomaton& a, const StateWord& seed,
                               std::size_t cap, ClosurePolicy policy) {
    if (seed.empty()) return 1;
    const bool packed = policy != ClosurePolicy::Serial && packable(a, seed.size());
    if (!packed) return closure_serial(a, seed, cap).size();
    return closure_packed(a, seed, cap).size();
}

}  // namespace mealy
