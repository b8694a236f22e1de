#include "carsync/bk_family.hpp"

namespace carsync {

namespace {

void check_k(int k) {
    if (k < 1 || k > 20)
        throw std::invalid_argument("B_k: k must be in [1, 20], got " + std::to_string(k));
}

}  // namespace

std::vector<StateSet> tk_family(int k) {
    check_k(k);
    const std::size_t n = 2 * static_cast<std::size_t>(k);
    const std::uint64_t count = (1ull << k) - 1;
    std::vector<StateSet> family;
    family.reserve(count);
    // State indexing: c_i -> i-1, t_i -> k+i-1.
    for (std::uint64_t code = 1; code <= count; ++code) {
        StateSet s(n);
        for (int i = 1; i <= k; ++i) {
            if (code & (1ull << (i - 1)))
                s.insert(static_cast<StateIndex>(k + i - 1));
            else
                s.insert(static_cast<StateIndex>((i - 2 + k) % k));  // cycle predecessor of c_i
        }
        family.push_back(std::move(s));
    }
    return family;
}

BkInstance generate_bk(int k) {
    check_k(k);
    const std::size_t n = 2 * static_cast<std::size_t>(k);
    const std::uint64_t chain = (1ull << k) - 1;

    std::vector<std::string> alphabet;
    alphabet.reserve(chain + 2);
    alphabet.emplace_back("a");
    for (std::uint64_t i = 1; i <= chain; ++i) alphabet.push_back("b" + std::to_string(i));
    alphabet.emplace_back("c");

    BkInstance out{k, Pfa(n, std::move(alphabet)), {}, tk_family(k), {}};

    for (int i = 1; i <= k; ++i) out.state_names.push_back("c" + std::to_string(i));
    for (int i = 1; i <= k; ++i) out.state_names.push_back("t" + std::to_string(i));

    Pfa& pfa = out.pfa;
    for (int i = 0; i < k; ++i) {
        pfa.set_transition(i, 0, (i + 1) % k);      // cycle step
        pfa.set_transition(k + i, 0, i);            // tail injection t_i -> c_i
    }

    // b_1 maps the cycle onto S_1; b_{i+1} maps S_i onto S_{i+1}; the
    // final letter collapses S_{2^k-1} to c_1. Members are paired in
    // ascending state order.
    const LetterIndex collapse = static_cast<LetterIndex>(chain) + 1;
    std::vector<StateIndex> from(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) from[static_cast<std::size_t>(j)] = j;
    for (std::uint64_t i = 1; i <= chain; ++i) {
        const std::vector<StateIndex> to = out.family[i - 1].to_vector();
        for (int j = 0; j < k; ++j)
            pfa.set_transition(from[static_cast<std::size_t>(j)],
                               static_cast<LetterIndex>(i), to[static_cast<std::size_t>(j)]);
        from = to;
    }
    for (StateIndex q : from) pfa.set_transition(q, collapse, 0);

    out.expected_word.reserve(chain + 2);
    for (LetterIndex a = 0; a <= collapse; ++a) out.expected_word.push_back(a);
    return out;
}

}  // namespace carsync
