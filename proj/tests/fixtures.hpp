#pragma once

#include <initializer_list>

#include "carsync/pfa.hpp"

namespace carsync::testing {

// Four states over {a, b, c}: a is total with self-loops on 1..3, b and c
// chase around the square with gaps. Shortest carefully synchronizing
// word is abcababcca (length 10), which beats the (n-1)^2 = 9 bound that
// complete automata are conjectured to obey.
inline Pfa four_state_example() {
    Pfa pfa(4, {"a", "b", "c"});
    pfa.set_transition(0, 0, 1);
    pfa.set_transition(1, 0, 1);
    pfa.set_transition(2, 0, 2);
    pfa.set_transition(3, 0, 3);
    pfa.set_transition(1, 1, 2);
    pfa.set_transition(2, 1, 3);
    pfa.set_transition(3, 1, 0);
    pfa.set_transition(0, 2, 1);
    pfa.set_transition(2, 2, 3);
    pfa.set_transition(3, 2, 0);
    return pfa;
}

inline StateSet make_set(std::size_t capacity, std::initializer_list<StateIndex> members) {
    StateSet s(capacity);
    for (StateIndex q : members) s.insert(q);
    return s;
}

}  // namespace carsync::testing
