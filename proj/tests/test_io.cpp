#include "doctest.h"

#include <random>
#include <sstream>

#include "carsync/bk_family.hpp"
#include "carsync/io.hpp"
#include "carsync/sat_reduction.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace carsync;
using namespace carsync::testing;

namespace {

bool same_table(const Pfa& lhs, const Pfa& rhs) {
    if (lhs.state_count() != rhs.state_count() || lhs.alphabet() != rhs.alphabet())
        return false;
    for (StateIndex q = 0; q < static_cast<StateIndex>(lhs.state_count()); ++q)
        for (LetterIndex a = 0; a < static_cast<LetterIndex>(lhs.alphabet_size()); ++a)
            if (lhs.target(q, a) != rhs.target(q, a)) return false;
    return true;
}

}  // namespace

TEST_CASE("documents parse by name or by index, with comments") {
    const char* text =
        "# a small machine\n"
        "pfa v1\n"
        "states 3\n"
        "names off mid on   # display names\n"
        "alphabet up down\n"
        "off up mid\n"
        "1 up 2          # indices work too\n"
        "on down mid\n"
        "\n";
    const NamedPfa doc = parse_pfa_document(text);
    CHECK(doc.pfa.state_count() == 3);
    CHECK(doc.state_names == std::vector<std::string>{"off", "mid", "on"});
    CHECK(doc.pfa.target(0, 0) == 1);
    CHECK(doc.pfa.target(1, 0) == 2);
    CHECK(doc.pfa.target(2, 1) == 1);
    CHECK(doc.pfa.target(0, 1) == Pfa::kUndefined);
    CHECK(doc.state_label(2) == "on");
}

TEST_CASE("parse errors carry line numbers") {
    const auto line_of = [](const char* text) {
        try {
            parse_pfa_document(text);
        } catch (const ParseError& e) {
            return e.line;
        }
        return std::size_t{0};
    };

    CHECK(line_of("nope\n") == 1);
    CHECK(line_of("pfa v1\nstates zero\n") == 2);
    CHECK(line_of("pfa v1\nstates 2\nnames only_one\nalphabet a\n") == 3);
    CHECK(line_of("pfa v1\nstates 2\nalphabet\n") == 3);
    CHECK(line_of("pfa v1\nstates 2\nalphabet a\n0 a 5\n") == 4);
    CHECK(line_of("pfa v1\nstates 2\nalphabet a\n0 z 1\n") == 4);
    CHECK(line_of("pfa v1\nstates 2\nalphabet a\n0 a 1\n0 a 0\n") == 5);  // duplicate pair
    CHECK(line_of("pfa v1\nstates 2\nalphabet a\n0 a\n") == 4);
}

TEST_CASE("serialize then parse reproduces the transition table") {
    SUBCASE("hand automaton without names") {
        const NamedPfa doc{four_state_example(), {}};
        const NamedPfa back = parse_pfa_document(serialize_pfa_document(doc));
        CHECK(same_table(doc.pfa, back.pfa));
        CHECK(back.state_names.empty());
    }

    SUBCASE("generated families, reductions and random automata") {
        std::mt19937 rng(31337);
        std::vector<NamedPfa> corpus;
        for (int k = 1; k <= 6; ++k) {
            BkInstance instance = generate_bk(k);
            corpus.push_back(NamedPfa{std::move(instance.pfa), std::move(instance.state_names)});
        }
        for (int round = 0; round < 50; ++round) {
            std::vector<Clause> clauses;
            const int n = std::uniform_int_distribution<int>(3, 6)(rng);
            const int m = std::uniform_int_distribution<int>(1, 5)(rng);
            std::vector<int> vars(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) vars[static_cast<std::size_t>(i)] = i + 1;
            std::bernoulli_distribution sign(0.5);
            for (int i = 0; i < m; ++i) {
                std::shuffle(vars.begin(), vars.end(), rng);
                clauses.push_back({sign(rng) ? vars[0] : -vars[0],
                                   sign(rng) ? vars[1] : -vars[1],
                                   sign(rng) ? vars[2] : -vars[2]});
            }
            ReductionOutput out = reduce(make_cnf(n, clauses));
            corpus.push_back(NamedPfa{std::move(out.pfa), std::move(out.state_names)});
        }
        for (int round = 0; round < 100; ++round) {
            const int n = std::uniform_int_distribution<int>(1, 12)(rng);
            const int sigma = std::uniform_int_distribution<int>(1, 4)(rng);
            corpus.push_back(NamedPfa{random_pfa(rng, n, sigma, 0.6), {}});
        }

        for (const NamedPfa& doc : corpus) {
            const NamedPfa back = parse_pfa_document(serialize_pfa_document(doc));
            CHECK(same_table(doc.pfa, back.pfa));
            CHECK(back.state_names == doc.state_names);
        }
    }
}

TEST_CASE("dot export") {
    const NamedPfa doc{four_state_example(), {}};
    const std::string dot = to_dot(doc, LetterIndex{0});
    CHECK(dot.find("digraph pfa {") != std::string::npos);
    CHECK(dot.find("\"0\" -> \"1\" [label=\"a,c\"];") != std::string::npos);
    CHECK(dot.find("\"1\" [shape=doublecircle];") != std::string::npos);  // a-cycle state
    CHECK(dot.find("\"0\";") != std::string::npos);                       // tree state, plain
    // no edge for undefined pairs
    CHECK(dot.find("\"0\" -> \"2\"") == std::string::npos);

    // without a designated letter nothing is highlighted
    CHECK(to_dot(doc).find("doublecircle") == std::string::npos);
}

TEST_CASE("word rendering and parsing") {
    const Pfa pfa = four_state_example();
    const Word w{0, 1, 2, 0};
    CHECK(word_text(pfa, w) == "a b c a");
    CHECK(word_text(pfa, w, true) == "abca");
    CHECK(parse_word(pfa, {"a", "b", "c", "a"}) == w);
    CHECK(parse_word(pfa, {"abca"}, true) == w);
    CHECK_THROWS_AS(parse_word(pfa, {"d"}), std::invalid_argument);

    const BkInstance b2 = generate_bk(2);
    CHECK(word_text(b2.pfa, b2.expected_word) == "a b1 b2 b3 c");
    CHECK(parse_word(b2.pfa, {"a", "b1", "b2", "b3", "c"}) == b2.expected_word);
    CHECK_THROWS_AS(word_text(b2.pfa, b2.expected_word, true), std::invalid_argument);

    std::mt19937 rng(8181);
    for (int round = 0; round < 40; ++round) {
        const BkInstance inst = generate_bk(std::uniform_int_distribution<int>(1, 5)(rng));
        std::uniform_int_distribution<LetterIndex> letter(
            0, static_cast<LetterIndex>(inst.pfa.alphabet_size()) - 1);
        Word random_word;
        for (int i = std::uniform_int_distribution<int>(0, 12)(rng); i > 0; --i)
            random_word.push_back(letter(rng));
        std::istringstream split(word_text(inst.pfa, random_word));
        std::vector<std::string> tokens;
        std::string t;
        while (split >> t) tokens.push_back(t);
        CHECK(parse_word(inst.pfa, tokens) == random_word);
    }
}

TEST_CASE("digest is stable") {
    CHECK(digest_hex("") == "fnv1a64:cbf29ce484222325");
    CHECK(digest_hex("pfa v1\n") == digest_hex("pfa v1\n"));
    CHECK(digest_hex("a") != digest_hex("b"));
}
