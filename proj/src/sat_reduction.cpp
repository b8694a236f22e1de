#include "carsync/sat_reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace carsync {

namespace {

void validate_clause(const Clause& clause, int variable_count, std::size_t index) {
    const std::string where = "clause " + std::to_string(index + 1);
    for (int lit : clause) {
        if (lit == 0) throw DimacsError(where + ": literal 0 inside a clause");
        const int var = std::abs(lit);
        if (var > variable_count)
            throw DimacsError(where + ": variable " + std::to_string(var) +
                              " exceeds the declared count");
    }
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            if (clause[i] == clause[j])
                throw DimacsError(where + ": duplicate variable " +
                                  std::to_string(std::abs(clause[i])));
            if (clause[i] == -clause[j])
                throw DimacsError(where + ": complementary pair on variable " +
                                  std::to_string(std::abs(clause[i])) +
                                  "; such a clause is always true and should be removed by "
                                  "preprocessing");
        }
}

bool clause_contains(const Clause& clause, int literal) {
    return clause[0] == literal || clause[1] == literal || clause[2] == literal;
}

}  // namespace

CnfFormula make_cnf(int variable_count, std::vector<Clause> clauses) {
    if (variable_count < 1) throw DimacsError("formula must have at least one variable");
    if (clauses.empty()) throw DimacsError("formula must have at least one clause");
    for (std::size_t i = 0; i < clauses.size(); ++i) {
        std::sort(clauses[i].begin(), clauses[i].end(),
                  [](int lhs, int rhs) { return std::abs(lhs) < std::abs(rhs); });
        validate_clause(clauses[i], variable_count, i);
    }
    return CnfFormula{variable_count, std::move(clauses)};
}

CnfFormula parse_dimacs(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int declared_vars = -1;
    std::size_t declared_clauses = 0;
    std::vector<Clause> clauses;
    std::vector<int> pending;
    std::size_t line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream tokens(line);
        std::string first;
        if (!(tokens >> first)) continue;
        if (first == "c" || first[0] == 'c' || first == "%") continue;
        if (first == "p") {
            std::string kind;
            long n = 0, m = 0;
            if (declared_vars != -1)
                throw DimacsError("line " + std::to_string(line_no) + ": duplicate header");
            if (!(tokens >> kind >> n >> m) || kind != "cnf" || n < 1 || m < 1)
                throw DimacsError("line " + std::to_string(line_no) +
                                  ": malformed header, expected 'p cnf <vars> <clauses>'");
            declared_vars = static_cast<int>(n);
            declared_clauses = static_cast<std::size_t>(m);
            continue;
        }
        if (declared_vars == -1)
            throw DimacsError("line " + std::to_string(line_no) + ": clause before header");
        tokens.clear();
        tokens.str(line);
        int lit = 0;
        while (tokens >> lit) {
            if (lit == 0) {
                if (pending.size() != 3)
                    throw DimacsError("line " + std::to_string(line_no) + ": clause of size " +
                                      std::to_string(pending.size()) +
                                      "; only 3-literal clauses are accepted");
                clauses.push_back(Clause{pending[0], pending[1], pending[2]});
                pending.clear();
            } else {
                pending.push_back(lit);
            }
        }
        if (!tokens.eof())
            throw DimacsError("line " + std::to_string(line_no) + ": unexpected token");
    }
    if (declared_vars == -1) throw DimacsError("missing 'p cnf' header");
    if (!pending.empty()) throw DimacsError("unterminated clause at end of input");
    if (clauses.size() != declared_clauses)
        throw DimacsError("header declares " + std::to_string(declared_clauses) +
                          " clauses but " + std::to_string(clauses.size()) + " were given");
    return make_cnf(declared_vars, std::move(clauses));
}

StateIndex ReductionOutput::p_state(int i) const {
    return static_cast<StateIndex>(i - 1);
}

StateIndex ReductionOutput::r_state(int i) const {
    return static_cast<StateIndex>(clause_count + i - 1);
}

StateIndex ReductionOutput::chain_state(int i, int j, bool barred) const {
    const int base = 2 * clause_count + (i - 1) * 2 * (variable_count + 1);
    return static_cast<StateIndex>(base + (barred ? variable_count + 1 : 0) + j - 1);
}

StateIndex ReductionOutput::end_state(int i, bool barred) const {
    const int base = 2 * clause_count + (i - 1) * 2 * (variable_count + 1);
    return static_cast<StateIndex>(base + (barred ? variable_count + 1 : 0) + variable_count);
}

ReductionOutput reduce(const CnfFormula& formula) {
    const int n = formula.variable_count;
    const int m = static_cast<int>(formula.clauses.size());
    if (n < 1 || m < 1) throw DimacsError("reduce: empty formula");
    for (std::size_t i = 0; i < formula.clauses.size(); ++i)
        validate_clause(formula.clauses[i], n, i);

    const std::size_t state_count = static_cast<std::size_t>(2 * m * (n + 2));
    ReductionOutput out{Pfa(state_count, {"a", "b"}),
                        std::vector<std::string>(state_count),
                        StateSet(state_count),
                        StateSet(state_count),
                        n,
                        m};
    constexpr LetterIndex A = 0;
    constexpr LetterIndex B = 1;
    Pfa& pfa = out.pfa;

    for (int i = 1; i <= m; ++i) {
        out.state_names[static_cast<std::size_t>(out.p_state(i))] = "p" + std::to_string(i);
        out.state_names[static_cast<std::size_t>(out.r_state(i))] = "r" + std::to_string(i);
        for (int j = 1; j <= n; ++j) {
            out.state_names[static_cast<std::size_t>(out.chain_state(i, j, false))] =
                "c" + std::to_string(i) + "^x" + std::to_string(j);
            out.state_names[static_cast<std::size_t>(out.chain_state(i, j, true))] =
                "nc" + std::to_string(i) + "^x" + std::to_string(j);
        }
        out.state_names[static_cast<std::size_t>(out.end_state(i, false))] =
            "c" + std::to_string(i) + "^end";
        out.state_names[static_cast<std::size_t>(out.end_state(i, true))] =
            "nc" + std::to_string(i) + "^end";
    }

    for (int i = 1; i <= m; ++i) {
        const Clause& clause = formula.clauses[static_cast<std::size_t>(i - 1)];

        pfa.set_transition(out.p_state(i), A, out.p_state(i % m + 1));
        pfa.set_transition(out.p_state(i), B, out.chain_state(i, 1, true));
        pfa.set_transition(out.r_state(i), A, out.p_state(i));
        pfa.set_transition(out.end_state(i, false), A, out.r_state(i));
        pfa.set_transition(out.end_state(i, true), A, out.r_state(i));
        pfa.set_transition(out.end_state(i, false), B, out.p_state(1));

        for (int j = 1; j <= n; ++j) {
            const StateIndex plain_next =
                j < n ? out.chain_state(i, j + 1, false) : out.end_state(i, false);
            const StateIndex barred_next =
                j < n ? out.chain_state(i, j + 1, true) : out.end_state(i, true);
            pfa.set_transition(out.chain_state(i, j, false), A, plain_next);
            pfa.set_transition(out.chain_state(i, j, false), B, plain_next);
            pfa.set_transition(out.chain_state(i, j, true), A,
                               clause_contains(clause, j) ? plain_next : barred_next);
            pfa.set_transition(out.chain_state(i, j, true), B,
                               clause_contains(clause, -j) ? plain_next : barred_next);
        }

        out.s_init.insert(out.chain_state(i, 1, true));
        out.s_end.insert(out.end_state(i, false));
    }
    return out;
}

Word assignment_to_word(const CnfFormula& formula, const Assignment& e) {
    if (static_cast<int>(e.size()) != formula.variable_count)
        throw std::invalid_argument("assignment length does not match the variable count");
    Word w;
    w.reserve(e.size());
    for (bool value : e) w.push_back(value ? 0 : 1);
    return w;
}

Assignment word_to_assignment(const Word& w) {
    Assignment e;
    e.reserve(w.size());
    for (LetterIndex a : w) {
        if (a != 0 && a != 1)
            throw std::invalid_argument("word_to_assignment: letter index " +
                                        std::to_string(a) + " is not 'a' or 'b'");
        e.push_back(a == 0);
    }
    return e;
}

Word full_sync_word(const CnfFormula& formula, const Assignment& e) {
    if (!evaluate(formula, e))
        throw std::invalid_argument("full_sync_word: the assignment does not satisfy the formula");
    Word w(static_cast<std::size_t>(formula.variable_count) + 3, 0);
    w.push_back(1);
    const Word window = assignment_to_word(formula, e);
    w.insert(w.end(), window.begin(), window.end());
    w.push_back(1);
    return w;
}

bool evaluate(const CnfFormula& formula, const Assignment& e) {
    if (static_cast<int>(e.size()) != formula.variable_count)
        throw std::invalid_argument("assignment length does not match the variable count");
    for (const Clause& clause : formula.clauses) {
        bool satisfied = false;
        for (int lit : clause)
            if (e[static_cast<std::size_t>(std::abs(lit) - 1)] == (lit > 0)) {
                satisfied = true;
                break;
            }
        if (!satisfied) return false;
    }
    return true;
}

std::optional<Assignment> brute_force_sat(const CnfFormula& formula) {
    const int n = formula.variable_count;
    if (n > 24)
        throw std::invalid_argument("brute_force_sat: enumeration is guarded to 24 variables");
    Assignment e(static_cast<std::size_t>(n));
    for (std::uint64_t code = 0; code < (1ull << n); ++code) {
        for (int j = 0; j < n; ++j)
            e[static_cast<std::size_t>(j)] = (code >> (n - 1 - j)) & 1u;  // x_1 most significant
        if (evaluate(formula, e)) return e;
    }
    return std::nullopt;
}

namespace {

// Depth-first walk over the words of length n in lexicographic order,
// advancing one chain state per clause in lock step. A branch dies as
// soon as some clause can no longer reach its plain end state.
bool window_dfs(const ReductionOutput& out, const std::vector<char>& can_reach_end,
                std::vector<StateIndex>& components, int depth, Word& word) {
    const int n = out.variable_count;
    if (depth == n) {
        for (int i = 1; i <= out.clause_count; ++i)
            if (components[static_cast<std::size_t>(i - 1)] != out.end_state(i, false))
                return false;
        return true;
    }
    for (LetterIndex letter = 0; letter < 2; ++letter) {
        std::vector<StateIndex> next(components.size());
        bool viable = true;
        for (std::size_t i = 0; i < components.size(); ++i) {
            next[i] = out.pfa.target(components[i], letter);
            if (!can_reach_end[static_cast<std::size_t>(next[i])]) {
                viable = false;
                break;
            }
        }
        if (!viable) continue;
        word.push_back(letter);
        std::swap(components, next);
        if (window_dfs(out, can_reach_end, components, depth + 1, word)) return true;
        std::swap(components, next);
        word.pop_back();
    }
    return false;
}

}  // namespace

std::optional<Word> window_check(const ReductionOutput& out) {
    const int n = out.variable_count;
    const int m = out.clause_count;
    if (n > 24)
        throw std::invalid_argument("window_check: enumeration is guarded to 24 variables");

    // Backward over the chains: can this state still reach the plain end?
    std::vector<char> can_reach_end(out.pfa.state_count(), 0);
    for (int i = 1; i <= m; ++i) {
        can_reach_end[static_cast<std::size_t>(out.end_state(i, false))] = 1;
        for (int j = n; j >= 1; --j)
            for (bool barred : {false, true}) {
                const StateIndex s = out.chain_state(i, j, barred);
                const bool reaches =
                    can_reach_end[static_cast<std::size_t>(out.pfa.target(s, 0))] ||
                    can_reach_end[static_cast<std::size_t>(out.pfa.target(s, 1))];
                can_reach_end[static_cast<std::size_t>(s)] = reaches ? 1 : 0;
            }
    }

    std::vector<StateIndex> components;
    components.reserve(static_cast<std::size_t>(m));
    for (int i = 1; i <= m; ++i) components.push_back(out.chain_state(i, 1, true));
    Word word;
    word.reserve(static_cast<std::size_t>(n));
    if (window_dfs(out, can_reach_end, components, 0, word)) return word;
    return std::nullopt;
}

}  // namespace carsync
