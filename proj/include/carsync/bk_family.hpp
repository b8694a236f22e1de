#pragma once

#include <string>
#include <vector>

#include "carsync/pfa.hpp"

namespace carsync {

/// A member of the family of 2k-state automata whose shortest carefully
/// synchronizing word has length 2^k + 1: a k-cycle C with a k-set T of
/// tails injected into it, one letter per subset-chain step, and a final
/// collapsing letter. The alphabet is intentionally exponential in k.
struct BkInstance {
    int k = 0;
    Pfa pfa;
    std::vector<std::string> state_names;  // c1..ck then t1..tk
    std::vector<StateSet> family;          // S_1 .. S_{2^k - 1}
    Word expected_word;                    // a b1 ... b_{2^k-1} c
};

/// The chain sets S_i: for each non-empty T of the tail states,
/// T together with the cycle predecessors of the tails left out.
/// Ordered by the ascending binary encoding of T (bit j-1 <-> t_j).
/// Every set has exactly k members and maps onto the cycle under a.
std::vector<StateSet> tk_family(int k);

/// Build the full automaton. States are indexed c1..ck, t1..tk; letters
/// are a, b1..b_{2^k-1}, c in that order. k is capped at 20 because the
/// alphabet has 2^k + 1 letters.
BkInstance generate_bk(int k);

}  // namespace carsync
