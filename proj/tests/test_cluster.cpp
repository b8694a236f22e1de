#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "carsync/bk_family.hpp"
#include "carsync/cluster.hpp"
#include "carsync/sat_reduction.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace carsync;
using namespace carsync::testing;

TEST_CASE("decompose splits the four-state example on a into three clusters") {
    const Pfa pfa = four_state_example();
    const ClusterDecomposition d = decompose(pfa, 0);

    REQUIRE(d.clusters.size() == 3);
    CHECK(d.clusters[0].cycle == std::vector<StateIndex>{1});
    CHECK(d.clusters[0].tree_parents == std::map<StateIndex, StateIndex>{{0, 1}});
    CHECK(d.clusters[1].cycle == std::vector<StateIndex>{2});
    CHECK(d.clusters[2].cycle == std::vector<StateIndex>{3});
    CHECK(d.state_to_cluster == std::vector<int>{0, 0, 1, 2});
    CHECK(d.level == std::vector<int>{1, 0, 0, 0});
    CHECK(d.graph_level == 1);
}

TEST_CASE("decompose on the tail-injection family and the reduction") {
    SUBCASE("B_3: one cluster, cycle c1 c2 c3, tails at level 1") {
        const BkInstance b3 = generate_bk(3);
        const ClusterDecomposition d = decompose(b3.pfa, 0);
        REQUIRE(d.clusters.size() == 1);
        CHECK(d.clusters[0].cycle == std::vector<StateIndex>{0, 1, 2});
        for (StateIndex t = 3; t < 6; ++t) CHECK(d.level[static_cast<std::size_t>(t)] == 1);
        CHECK(d.graph_level == 1);
    }

    SUBCASE("single state with a self-loop") {
        Pfa loop(1, {"a"});
        loop.set_transition(0, 0, 0);
        const ClusterDecomposition d = decompose(loop, 0);
        REQUIRE(d.clusters.size() == 1);
        CHECK(d.clusters[0].cycle == std::vector<StateIndex>{0});
        CHECK(d.graph_level == 0);
    }

    SUBCASE("compiled example formula: the a-cycle is exactly the anchor set P") {
        const CnfFormula phi =
            make_cnf(4, {{1, 3, 4}, {1, 2, -3}, {-1, -2, 4}});
        const ReductionOutput out = reduce(phi);
        const ClusterDecomposition d = decompose(out.pfa, 0);
        REQUIRE(d.clusters.size() == 1);
        CHECK(d.clusters[0].cycle ==
              std::vector<StateIndex>{out.p_state(1), out.p_state(2), out.p_state(3)});
    }
}

TEST_CASE("decompose rejects a non-total letter and names the first gap") {
    const Pfa pfa = four_state_example();
    CHECK_THROWS_WITH_AS(decompose(pfa, 1), "letter 'b' is not total: undefined on state 0",
                         LetterNotTotal);
    try {
        decompose(pfa, 1);
    } catch (const LetterNotTotal& e) {
        CHECK(e.letter == 1);
        CHECK(e.state == 0);
    }
}

TEST_CASE("is_one_cluster") {
    for (int k = 1; k <= 4; ++k) CHECK(is_one_cluster(generate_bk(k).pfa, 0));
    const Pfa pfa = four_state_example();
    CHECK(!is_one_cluster(pfa, 0));  // three a-clusters
    CHECK(!is_one_cluster(pfa, 1));  // not even total
}

TEST_CASE("cycle_distance") {
    SUBCASE("five-cycle") {
        Pfa ring(5, {"a"});
        for (StateIndex q = 0; q < 5; ++q) ring.set_transition(q, 0, (q + 1) % 5);
        const ClusterDecomposition d = decompose(ring, 0);
        CHECK(cycle_distance(d, 2, 2) == 0);
        CHECK(cycle_distance(d, 0, 1) == 1);
        CHECK(cycle_distance(d, 1, 0) == 1);
        CHECK(cycle_distance(d, 0, 3) == 2);  // min(3, 2)
    }

    SUBCASE("cycle of B_4: dist(c1, c3) = 2 both ways") {
        const BkInstance b4 = generate_bk(4);
        const ClusterDecomposition d = decompose(b4.pfa, 0);
        CHECK(cycle_distance(d, 0, 2) == 2);
        CHECK(cycle_distance(d, 2, 0) == 2);
    }

    SUBCASE("rejects non-cycle or cross-cycle arguments") {
        const ClusterDecomposition d = decompose(four_state_example(), 0);
        CHECK_THROWS_AS(cycle_distance(d, 0, 1), std::invalid_argument);  // 0 is a tree state
        CHECK_THROWS_AS(cycle_distance(d, 1, 2), std::invalid_argument);  // distinct cycles
    }
}

TEST_CASE("sync_prerequisites") {
    SUBCASE("no total letter is a proof of non-synchronizability") {
        Pfa pfa(2, {"a", "b"});
        pfa.set_transition(0, 0, 1);
        pfa.set_transition(1, 1, 0);
        const PrerequisiteReport report = sync_prerequisites(pfa);
        CHECK(report.total_letters.empty());
        CHECK(!report.passed());
    }

    SUBCASE("B_2 passes; b1 covers the cycle") {
        const PrerequisiteReport report = sync_prerequisites(generate_bk(2).pfa);
        CHECK(report.passed());
        REQUIRE(report.cycle_cover);
        CHECK(report.cycle_cover->cluster_letter == 0);
        CHECK(report.cycle_cover->cycle_size == 2);
        CHECK(report.cycle_cover->cover_letter == 1);  // b1
    }

    SUBCASE("unsatisfiable reduction output still passes: the check is only necessary") {
        std::vector<Clause> all_signs;
        for (int s1 : {1, -1})
            for (int s2 : {2, -2})
                for (int s3 : {3, -3}) all_signs.push_back({s1, s2, s3});
        const ReductionOutput out = reduce(make_cnf(3, all_signs));
        CHECK(sync_prerequisites(out.pfa).passed());
    }

    SUBCASE("unique total one-cluster letter with an uncovered cycle fails") {
        Pfa pfa(3, {"a", "b"});
        for (StateIndex q = 0; q < 3; ++q) pfa.set_transition(q, 0, (q + 1) % 3);
        pfa.set_transition(0, 1, 0);  // b exists but misses cycle states 1, 2
        const PrerequisiteReport report = sync_prerequisites(pfa);
        CHECK(!report.passed());
        REQUIRE(report.cycle_cover);
        CHECK(!report.cycle_cover->cover_letter);
    }
}

TEST_CASE("decomposition laws on random functional graphs") {
    std::mt19937 rng(77002);
    for (int round = 0; round < 120; ++round) {
        const int n = std::uniform_int_distribution<int>(1, 14)(rng);
        const Pfa pfa = random_one_cluster_pfa(rng, n, 1, 0.5);
        const ClusterDecomposition d = decompose(pfa, 0);

        StateSet cycles(static_cast<std::size_t>(n));
        for (const Cluster& cluster : d.clusters)
            for (StateIndex q : cluster.cycle) cycles.insert(q);

        for (StateIndex q = 0; q < n; ++q) {
            // successor stays in the same cluster
            CHECK(d.state_to_cluster[static_cast<std::size_t>(pfa.target(q, 0))] ==
                  d.state_to_cluster[static_cast<std::size_t>(q)]);
            // level 0 exactly on the cycle, and a^level(q) reaches it
            CHECK(d.on_cycle(q) == cycles.contains(q));
            const Word walk(static_cast<std::size_t>(d.level[static_cast<std::size_t>(q)]), 0);
            const auto image = apply_word(pfa, make_set(static_cast<std::size_t>(n), {q}), walk);
            REQUIRE(image);
            CHECK(image->is_subset_of(cycles));
        }

        const Word to_cycle(static_cast<std::size_t>(d.graph_level), 0);
        CHECK(*apply_word(pfa, StateSet::full(static_cast<std::size_t>(n)), to_cycle) == cycles);

        if (d.clusters.size() == 1) {
            // one-cluster: Q.a^k equals the cycle for every k >= graph_level
            for (int extra = 1; extra <= 3; ++extra) {
                const Word more(static_cast<std::size_t>(d.graph_level + extra), 0);
                CHECK(*apply_word(pfa, StateSet::full(static_cast<std::size_t>(n)), more) ==
                      cycles);
            }
        }

        // distance laws on the largest cycle
        const auto& cycle = d.clusters.front().cycle;
        const int len = static_cast<int>(cycle.size());
        for (StateIndex p : cycle)
            for (StateIndex q : cycle) {
                const int dist = cycle_distance(d, p, q);
                CHECK(dist == cycle_distance(d, q, p));
                CHECK(dist <= len / 2);
                CHECK((dist == 0) == (p == q));
            }
    }
}

TEST_CASE("deterministic ordering on random functional graphs") {
    std::mt19937 rng(3141592);
    for (int round = 0; round < 120; ++round) {
        const int n = std::uniform_int_distribution<int>(1, 20)(rng);
        Pfa pfa(static_cast<std::size_t>(n), {"a"});
        std::uniform_int_distribution<StateIndex> target(0, n - 1);
        for (StateIndex q = 0; q < n; ++q) pfa.set_transition(q, 0, target(rng));

        const ClusterDecomposition d = decompose(pfa, 0);
        int previous_min = -1;
        for (const Cluster& cluster : d.clusters) {
            // the cycle is listed in successor order from its smallest state
            CHECK(cluster.cycle.front() ==
                  *std::min_element(cluster.cycle.begin(), cluster.cycle.end()));
            for (std::size_t i = 0; i < cluster.cycle.size(); ++i)
                CHECK(pfa.target(cluster.cycle[i], 0) ==
                      cluster.cycle[(i + 1) % cluster.cycle.size()]);
            for (const auto& [state, parent] : cluster.tree_parents)
                CHECK(pfa.target(state, 0) == parent);

            // clusters appear in order of their smallest member
            int min_member = cluster.cycle.front();
            for (const auto& [state, parent] : cluster.tree_parents)
                min_member = std::min(min_member, static_cast<int>(state));
            CHECK(min_member > previous_min);
            previous_min = min_member;
        }

        // the clusters partition the states
        std::size_t covered = 0;
        for (const Cluster& cluster : d.clusters)
            covered += cluster.cycle.size() + cluster.tree_parents.size();
        CHECK(covered == static_cast<std::size_t>(n));
    }
}

// For any cycle C, any subset keeping more than half of C, and any distance
// k realized on C, the subset still realizes k. This is the counting
// argument the shrink procedure relies on; checked exhaustively.
TEST_CASE("majority subsets of a cycle realize every distance") {
    for (int len = 2; len <= 12; ++len) {
        Pfa ring(static_cast<std::size_t>(len), {"a"});
        for (StateIndex q = 0; q < len; ++q) ring.set_transition(q, 0, (q + 1) % len);
        const ClusterDecomposition d = decompose(ring, 0);

        for (unsigned mask = 0; mask < (1u << len); ++mask) {
            if (2 * __builtin_popcount(mask) <= len) continue;
            std::vector<StateIndex> members;
            for (int q = 0; q < len; ++q)
                if (mask & (1u << q)) members.push_back(q);
            for (int k = 0; k <= len / 2; ++k) {
                bool realized = false;
                for (StateIndex p : members) {
                    for (StateIndex q : members)
                        if (cycle_distance(d, p, q) == k) {
                            realized = true;
                            break;
                        }
                    if (realized) break;
                }
                CHECK(realized);
            }
        }
    }
}
