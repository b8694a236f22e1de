#include "carsync/search.hpp"

#include <algorithm>
#include <unordered_set>

#include "carsync/cluster.hpp"

namespace carsync {

namespace {

struct BfsNode {
    StateSet set;
    std::uint32_t parent;
    LetterIndex letter;
    std::uint32_t depth;
};

// The visited table stores arena indices; hashing and equality go through
// the arena so each set is stored once.
struct ArenaHash {
    const std::vector<BfsNode>* arena;
    std::size_t operator()(std::uint32_t i) const { return (*arena)[i].set.hash(); }
};
struct ArenaEq {
    const std::vector<BfsNode>* arena;
    bool operator()(std::uint32_t lhs, std::uint32_t rhs) const {
        return (*arena)[lhs].set == (*arena)[rhs].set;
    }
};

Word reconstruct(const std::vector<BfsNode>& arena, std::uint32_t node, LetterIndex last) {
    Word w;
    w.push_back(last);
    for (std::uint32_t i = node; arena[i].parent != i; i = arena[i].parent)
        w.push_back(arena[i].letter);
    std::reverse(w.begin(), w.end());
    return w;
}

// Shared BFS core: expands letters in alphabet order from `start` and
// stops at the first image satisfying `goal`. Returns the full outcome;
// the word, when found, is the lexicographically least shortest one.
template <typename GoalFn>
SearchOutcome power_bfs(const Pfa& pfa, StateSet start, const SearchLimits& limits,
                        GoalFn&& goal) {
    if (goal(start)) {
        StateSet s = start;
        return Found{Word{}, s.empty() ? StateIndex{0} : s.front()};
    }

    std::vector<BfsNode> arena;
    std::unordered_set<std::uint32_t, ArenaHash, ArenaEq> visited(
        16, ArenaHash{&arena}, ArenaEq{&arena});
    arena.push_back(BfsNode{std::move(start), 0, -1, 0});
    visited.insert(0);

    const auto letter_count = static_cast<LetterIndex>(pfa.alphabet_size());
    StateSet image;
    for (std::uint32_t head = 0; head < arena.size(); ++head) {
        const std::uint32_t depth = arena[head].depth;
        if (depth >= limits.max_depth) return LimitExceeded{arena.size(), depth};
        for (LetterIndex a = 0; a < letter_count; ++a) {
            if (!apply_letter_into(pfa, arena[head].set, a, image)) continue;
            if (goal(image)) {
                Word w = reconstruct(arena, head, a);
                return Found{std::move(w), image.empty() ? StateIndex{0} : image.front()};
            }
            arena.push_back(BfsNode{std::move(image), head, a, depth + 1});
            if (!visited.insert(static_cast<std::uint32_t>(arena.size() - 1)).second) {
                arena.pop_back();
            } else if (arena.size() > limits.max_visited) {
                return LimitExceeded{arena.size(), depth + 1};
            }
        }
    }
    return NotSynchronizing{};
}

}  // namespace

SearchOutcome shortest_sync_word(const Pfa& pfa, const SearchLimits& limits) {
    return power_bfs(pfa, StateSet::full(pfa.state_count()), limits,
                     [](const StateSet& s) { return s.size() == 1; });
}

VerifyOutcome verify_word(const Pfa& pfa, const Word& w) {
    for (LetterIndex a : w)
        if (a < 0 || static_cast<std::size_t>(a) >= pfa.alphabet_size())
            throw std::out_of_range("verify_word: letter index out of range");

    StateSet current = StateSet::full(pfa.state_count());
    StateSet next;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!apply_letter_into(pfa, current, w[i], next)) {
            StateIndex blocked = -1;
            current.for_each([&](StateIndex q) {
                if (blocked == -1 && !pfa.defined(q, w[i])) blocked = q;
            });
            return Undefined{i, blocked, w[i]};
        }
        std::swap(current, next);
    }
    if (auto q = current.only_member()) return Synchronizing{*q};
    return NotSingleton{std::move(current)};
}

std::optional<Word> find_cycle_shrinking_word(const Pfa& pfa, LetterIndex a,
                                              const SearchLimits& limits) {
    if (!is_one_cluster(pfa, a))
        throw std::invalid_argument("find_cycle_shrinking_word: letter is not one-cluster");
    const ClusterDecomposition d = decompose(pfa, a);
    StateSet cycle(pfa.state_count());
    for (StateIndex q : d.clusters.front().cycle) cycle.insert(q);
    const std::size_t cycle_size = cycle.size();

    SearchOutcome outcome = power_bfs(pfa, std::move(cycle), limits,
                                      [&](const StateSet& s) { return s.size() < cycle_size; });
    if (auto* found = std::get_if<Found>(&outcome)) return std::move(found->word);
    if (auto* limit = std::get_if<LimitExceeded>(&outcome))
        throw SearchLimitReached(limit->visited, limit->depth);
    return std::nullopt;
}

Word shrink_below_half(const Pfa& pfa, LetterIndex a, const Word& w) {
    if (!is_one_cluster(pfa, a))
        throw std::invalid_argument("shrink_below_half: letter is not one-cluster");
    const ClusterDecomposition d = decompose(pfa, a);
    const auto& cycle_states = d.clusters.front().cycle;
    const std::size_t cycle_size = cycle_states.size();
    const std::size_t n = pfa.state_count();
    const auto level = static_cast<std::size_t>(d.graph_level);

    Word result(level, a);
    if (cycle_size == 1) return result;  // the cycle is already a single state

    StateSet cycle(n);
    for (StateIndex q : cycle_states) cycle.insert(q);
    const std::optional<StateSet> cycle_image = apply_word(pfa, cycle, w);
    if (!cycle_image || cycle_image->size() >= cycle_size)
        throw std::invalid_argument(
            "shrink_below_half: the word does not shrink the cycle of the given letter");

    const std::size_t target_size = cycle_size / 2;
    StateSet current = *apply_word(pfa, StateSet::full(n), result);  // = C
    StateSet rotated;
    while (current.size() > target_size) {
        // Re-enter the cycle with the fewest a-steps when an application
        // of w has left it; a^level always suffices.
        std::size_t back = 0;
        while (!current.is_subset_of(cycle)) {
            apply_letter_into(pfa, current, a, rotated);
            std::swap(current, rotated);
            ++back;
        }
        result.insert(result.end(), back, a);
        if (current.size() <= target_size) break;

        // Smallest rotation after which w strictly shrinks the set. More
        // than half the cycle survives in `current`, so some rotation
        // realigns a pair that w merges.
        bool stepped = false;
        rotated = current;
        for (std::size_t m = 0; m < cycle_size; ++m) {
            const std::optional<StateSet> shrunk = apply_word(pfa, rotated, w);
            if (shrunk && shrunk->size() < current.size()) {
                result.insert(result.end(), m, a);
                result.insert(result.end(), w.begin(), w.end());
                current = *shrunk;
                stepped = true;
                break;
            }
            StateSet next;
            apply_letter_into(pfa, rotated, a, next);
            rotated = std::move(next);
        }
        if (!stepped)
            throw std::logic_error("shrink_below_half: no rotation shrinks the set");
    }

    const std::size_t bound = n + cycle_size * (w.size() + cycle_size) / 2;
    if (result.size() > bound)
        throw std::logic_error("shrink_below_half: constructed word exceeds the length bound");
    return result;
}

}  // namespace carsync
