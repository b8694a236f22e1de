#include "carsync/cluster.hpp"

#include <algorithm>
#include <deque>

namespace carsync {

ClusterDecomposition decompose(const Pfa& pfa, LetterIndex a) {
    if (a < 0 || static_cast<std::size_t>(a) >= pfa.alphabet_size())
        throw std::out_of_range("decompose: letter index out of range");
    const auto n = static_cast<StateIndex>(pfa.state_count());
    for (StateIndex q = 0; q < n; ++q)
        if (!pfa.defined(q, a)) throw LetterNotTotal(a, q, pfa.letter_name(a));

    ClusterDecomposition d;
    d.letter = a;
    d.state_to_cluster.assign(static_cast<std::size_t>(n), -1);
    d.level.assign(static_cast<std::size_t>(n), -1);

    // Iterated-successor marking: each state walks forward until it meets
    // either the walk it is currently on (a new cycle) or a state already
    // assigned to a cluster. Out-degree is 1, so the total work is O(n).
    std::vector<int> walk_id(static_cast<std::size_t>(n), -1);
    std::vector<StateIndex> path;
    for (StateIndex start = 0; start < n; ++start) {
        if (d.state_to_cluster[static_cast<std::size_t>(start)] != -1) continue;
        path.clear();
        StateIndex q = start;
        while (d.state_to_cluster[static_cast<std::size_t>(q)] == -1 &&
               walk_id[static_cast<std::size_t>(q)] != start) {
            walk_id[static_cast<std::size_t>(q)] = start;
            path.push_back(q);
            q = pfa.target(q, a);
        }

        int cluster_id;
        if (d.state_to_cluster[static_cast<std::size_t>(q)] != -1) {
            cluster_id = d.state_to_cluster[static_cast<std::size_t>(q)];
        } else {
            // q closes a new cycle; collect it and rotate to the minimum.
            cluster_id = static_cast<int>(d.clusters.size());
            std::vector<StateIndex> cycle;
            StateIndex c = q;
            do {
                cycle.push_back(c);
                c = pfa.target(c, a);
            } while (c != q);
            const auto min_it = std::min_element(cycle.begin(), cycle.end());
            std::rotate(cycle.begin(), min_it, cycle.end());
            Cluster cluster;
            cluster.cycle = std::move(cycle);
            d.clusters.push_back(std::move(cluster));
            for (StateIndex c2 : d.clusters.back().cycle) {
                d.state_to_cluster[static_cast<std::size_t>(c2)] = cluster_id;
                d.level[static_cast<std::size_t>(c2)] = 0;
            }
        }
        for (StateIndex p : path)
            if (d.state_to_cluster[static_cast<std::size_t>(p)] == -1)
                d.state_to_cluster[static_cast<std::size_t>(p)] = cluster_id;
    }

    for (StateIndex q = 0; q < n; ++q)
        if (d.level[static_cast<std::size_t>(q)] != 0) {
            const int id = d.state_to_cluster[static_cast<std::size_t>(q)];
            d.clusters[static_cast<std::size_t>(id)].tree_parents.emplace(q, pfa.target(q, a));
        }

    // Levels by reverse BFS from the cycle states over preimage edges.
    std::vector<std::vector<StateIndex>> rev(static_cast<std::size_t>(n));
    for (StateIndex q = 0; q < n; ++q)
        rev[static_cast<std::size_t>(pfa.target(q, a))].push_back(q);
    std::deque<StateIndex> queue;
    for (StateIndex q = 0; q < n; ++q)
        if (d.level[static_cast<std::size_t>(q)] == 0) queue.push_back(q);
    while (!queue.empty()) {
        const StateIndex q = queue.front();
        queue.pop_front();
        for (StateIndex p : rev[static_cast<std::size_t>(q)]) {
            if (d.level[static_cast<std::size_t>(p)] != -1) continue;
            d.level[static_cast<std::size_t>(p)] = d.level[static_cast<std::size_t>(q)] + 1;
            queue.push_back(p);
        }
    }

    d.graph_level = *std::max_element(d.level.begin(), d.level.end());
    return d;
}

bool is_one_cluster(const Pfa& pfa, LetterIndex a) {
    if (a < 0 || static_cast<std::size_t>(a) >= pfa.alphabet_size())
        throw std::out_of_range("is_one_cluster: letter index out of range");
    if (!is_total(pfa, a)) return false;
    return decompose(pfa, a).clusters.size() == 1;
}

int cycle_distance(const ClusterDecomposition& d, StateIndex p, StateIndex q) {
    const auto n = static_cast<StateIndex>(d.state_to_cluster.size());
    if (p < 0 || p >= n || q < 0 || q >= n)
        throw std::out_of_range("cycle_distance: state index out of range");
    if (!d.on_cycle(p) || !d.on_cycle(q))
        throw std::invalid_argument("cycle_distance: both states must lie on a cycle");
    if (d.state_to_cluster[static_cast<std::size_t>(p)] !=
        d.state_to_cluster[static_cast<std::size_t>(q)])
        throw std::invalid_argument("cycle_distance: states lie on distinct cycles");

    const auto& cycle = d.clusters[static_cast<std::size_t>(
        d.state_to_cluster[static_cast<std::size_t>(p)])].cycle;
    const auto len = static_cast<int>(cycle.size());
    const auto pos = [&](StateIndex s) {
        return static_cast<int>(std::find(cycle.begin(), cycle.end(), s) - cycle.begin());
    };
    const int forward = ((pos(q) - pos(p)) % len + len) % len;
    return std::min(forward, len - forward);
}

PrerequisiteReport sync_prerequisites(const Pfa& pfa) {
    PrerequisiteReport report;
    for (LetterIndex a = 0; a < static_cast<LetterIndex>(pfa.alphabet_size()); ++a)
        if (is_total(pfa, a)) report.total_letters.push_back(a);

    if (report.total_letters.empty()) {
        report.violations.push_back(
            "no letter is defined on every state; the automaton is not carefully synchronizing");
        return report;
    }

    if (report.total_letters.size() == 1) {
        const LetterIndex a = report.total_letters.front();
        const ClusterDecomposition d = decompose(pfa, a);
        if (d.clusters.size() == 1 && d.clusters.front().cycle.size() > 1) {
            PrerequisiteReport::CycleCover check;
            check.cluster_letter = a;
            check.cycle_size = d.clusters.front().cycle.size();
            for (LetterIndex b = 0; b < static_cast<LetterIndex>(pfa.alphabet_size()); ++b) {
                if (b == a) continue;
                const bool covers = std::all_of(
                    d.clusters.front().cycle.begin(), d.clusters.front().cycle.end(),
                    [&](StateIndex q) { return pfa.defined(q, b); });
                if (covers) {
                    check.cover_letter = b;
                    break;
                }
            }
            if (!check.cover_letter)
                report.violations.push_back(
                    "letter '" + pfa.letter_name(a) +
                    "' is the only total letter and no other letter is defined on its whole "
                    "cycle; the automaton is not carefully synchronizing");
            report.cycle_cover = check;
        }
    }
    return report;
}

}  // namespace carsync
