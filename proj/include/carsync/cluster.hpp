#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "carsync/pfa.hpp"

namespace carsync {

/// Thrown when an operation requires a letter defined on every state and
/// the given one is not; names the first state lacking a transition.
class LetterNotTotal : public std::invalid_argument {
public:
    LetterNotTotal(LetterIndex letter, StateIndex state, const std::string& letter_name)
        : std::invalid_argument("letter '" + letter_name + "' is not total: undefined on state " +
                                std::to_string(state)),
          letter(letter),
          state(state) {}

    LetterIndex letter;
    StateIndex state;
};

/// One weakly connected component of a total letter's functional graph:
/// a unique cycle with trees hanging off it.
struct Cluster {
    /// Cycle states in successor order, starting from the smallest index.
    std::vector<StateIndex> cycle;
    /// Each non-cycle state of the component, mapped to its successor.
    std::map<StateIndex, StateIndex> tree_parents;
};

struct ClusterDecomposition {
    LetterIndex letter = 0;
    std::vector<Cluster> clusters;      // ordered by smallest member
    std::vector<int> state_to_cluster;  // state -> index into clusters
    std::vector<int> level;             // distance along edges to the cycle
    int graph_level = 0;                // max level over all states

    bool on_cycle(StateIndex q) const { return level[static_cast<std::size_t>(q)] == 0; }
};

/// Decompose the functional graph of a total letter into clusters, cycles
/// and levels. Rejects a non-total letter with LetterNotTotal. Output is
/// deterministic: cycles start at their minimum state, clusters are
/// ordered by smallest member.
ClusterDecomposition decompose(const Pfa& pfa, LetterIndex a);

/// True iff the letter is total and its graph has exactly one cluster.
bool is_one_cluster(const Pfa& pfa, LetterIndex a);

/// Distance between two states of the same cycle: the smaller of the two
/// directed walk lengths. Always at most half the cycle length.
int cycle_distance(const ClusterDecomposition& d, StateIndex p, StateIndex q);

/// Necessary conditions for careful synchronizability. Every violation
/// recorded here is a proof that no carefully synchronizing word exists;
/// an empty violation list proves nothing (the conditions are necessary,
/// not sufficient).
struct PrerequisiteReport {
    std::vector<LetterIndex> total_letters;

    /// Applies when the automaton has exactly one total letter, that
    /// letter is one-cluster and its cycle has more than one state: some
    /// other letter must then be defined on every cycle state.
    struct CycleCover {
        LetterIndex cluster_letter = 0;
        std::size_t cycle_size = 0;
        std::optional<LetterIndex> cover_letter;
    };
    std::optional<CycleCover> cycle_cover;

    std::vector<std::string> violations;

    bool passed() const { return violations.empty(); }
};

PrerequisiteReport sync_prerequisites(const Pfa& pfa);

}  // namespace carsync
