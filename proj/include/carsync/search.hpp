#pragma once

#include <cstdint>
#include <optional>
#include <variant>

#include "carsync/pfa.hpp"

namespace carsync {

/// Caps for the power-automaton searches. The underlying decision problem
/// is NP-hard, so an explicit LimitExceeded beats an open-ended run.
struct SearchLimits {
    std::uint64_t max_visited = 10'000'000;
    std::size_t max_depth = 1'000'000;
};

struct Found {
    Word word;
    StateIndex state;
};
struct NotSynchronizing {};
struct LimitExceeded {
    std::uint64_t visited;
    std::size_t depth;
};

/// Found carries the lexicographically least shortest carefully
/// synchronizing word. NotSynchronizing means the reachable component of
/// the power automaton was exhausted without meeting a singleton.
using SearchOutcome = std::variant<Found, NotSynchronizing, LimitExceeded>;

struct Synchronizing {
    StateIndex state;
};
struct NotSingleton {
    StateSet final_set;
};
struct Undefined {
    std::size_t position;
    StateIndex state;
    LetterIndex letter;
};

/// Synchronizing(q) holds exactly when the word maps the full state set
/// to {q} with every transition defined. Undefined reports the first
/// blocking position together with the smallest blocked state.
using VerifyOutcome = std::variant<Synchronizing, NotSingleton, Undefined>;

/// Thrown by find_cycle_shrinking_word when a limit is hit, so the caller
/// can tell "gave up" from the nullopt that proves no shrinking word is
/// reachable.
class SearchLimitReached : public std::runtime_error {
public:
    SearchLimitReached(std::uint64_t visited, std::size_t depth)
        : std::runtime_error("search limit reached after visiting " + std::to_string(visited) +
                             " sets at depth " + std::to_string(depth)),
          visited(visited),
          depth(depth) {}

    std::uint64_t visited;
    std::size_t depth;
};

/// Breadth-first search over the subsets of states reachable from the
/// full set; only reachable subsets are materialized. Letters are
/// expanded in alphabet order, so the word returned is the
/// lexicographically least among all shortest ones.
SearchOutcome shortest_sync_word(const Pfa& pfa, const SearchLimits& limits = {});

/// Single forward pass in O(|w| * |Q|) set-operation steps.
VerifyOutcome verify_word(const Pfa& pfa, const Word& w);

/// Shortest word w with the cycle image defined and strictly smaller than
/// the cycle, found by BFS from the cycle of the given one-cluster
/// letter. nullopt proves that no reachable image is smaller. Throws
/// SearchLimitReached when a limit is hit first.
std::optional<Word> find_cycle_shrinking_word(const Pfa& pfa, LetterIndex a,
                                              const SearchLimits& limits = {});

/// Given a one-cluster letter a with cycle C and a word w that shrinks C,
/// build a word w' defined on the whole state set with
/// |Q.w'| <= floor(|C|/2) and |w'| <= n + |C|(|w| + |C|)/2.
///
/// Construction: enter the cycle with a^level, then repeatedly rotate by
/// the smallest a-power that makes another application of w shrink the
/// current set, re-entering the cycle when an application of w has left
/// it. A counting argument on cycle distances guarantees each rotation
/// exists; failure to find one is reported as a logic error.
Word shrink_below_half(const Pfa& pfa, LetterIndex a, const Word& w);

}  // namespace carsync
