#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "carsync/pfa.hpp"

namespace carsync {

/// Three DIMACS-style signed literals over pairwise distinct variables,
/// stored sorted by variable index.
using Clause = std::array<int, 3>;

struct CnfFormula {
    int variable_count = 0;
    std::vector<Clause> clauses;
};

using Assignment = std::vector<bool>;

class DimacsError : public std::runtime_error {
public:
    explicit DimacsError(const std::string& message) : std::runtime_error(message) {}
};

/// Validate and normalize a formula built in code: clauses are sorted by
/// variable, arity and distinctness are enforced as in parse_dimacs.
CnfFormula make_cnf(int variable_count, std::vector<Clause> clauses);

/// Standard DIMACS CNF. Only formulas where every clause has exactly
/// three literals over three distinct variables are accepted; a clause
/// containing a complementary pair is rejected (it is always true and
/// should be removed by preprocessing).
CnfFormula parse_dimacs(std::string_view text);

/// The automaton compiled from a formula: binary alphabet {a, b}, one
/// a-cycle through the per-clause anchor states, and two transition
/// chains per clause that race a truth assignment across the variables.
/// Carefully synchronizing exactly when the formula is satisfiable.
struct ReductionOutput {
    Pfa pfa;                              // alphabet {a, b}
    std::vector<std::string> state_names; // p1, r1, c1^x1, nc1^x1, c1^end, ...
    StateSet s_init;                      // the barred chain entries nc_i^x1
    StateSet s_end;                       // the plain chain exits c_i^end
    int variable_count = 0;
    int clause_count = 0;

    // Deterministic state layout, all arguments 1-based.
    StateIndex p_state(int i) const;
    StateIndex r_state(int i) const;
    StateIndex chain_state(int i, int j, bool barred) const;
    StateIndex end_state(int i, bool barred) const;
};

ReductionOutput reduce(const CnfFormula& formula);

/// Position i of the word is 'a' exactly when the assignment makes x_i
/// true; word_to_assignment is the inverse.
Word assignment_to_word(const CnfFormula& formula, const Assignment& e);
Assignment word_to_assignment(const Word& w);

/// The carefully synchronizing witness a^{n+3} b w_e b (length 2n + 5)
/// for a satisfying assignment; rejects a non-satisfying one.
Word full_sync_word(const CnfFormula& formula, const Assignment& e);

bool evaluate(const CnfFormula& formula, const Assignment& e);

/// Lexicographically least satisfying assignment by exhaustive
/// enumeration (false before true, x_1 most significant), or nullopt.
/// Guarded to variable_count <= 24.
std::optional<Assignment> brute_force_sat(const CnfFormula& formula);

/// Search all words of length exactly n over {a, b} for one that maps
/// s_init onto s_end; returns the lexicographically least, or nullopt.
/// Such a word exists exactly when the automaton is carefully
/// synchronizing, so this doubles as an independent equivalence oracle.
std::optional<Word> window_check(const ReductionOutput& out);

}  // namespace carsync
