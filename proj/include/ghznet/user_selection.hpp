#pragma once

#include <string>
#include <vector>

#include "ghznet/shortest_paths.hpp"
#include "ghznet/topology.hpp"

namespace ghznet {

// Exhaustive search for the k-subset of nodes maximizing the sum of pairwise
// weighted shortest-path distances. Candidates are enumerated in lexicographic
// id order and ties keep the first maximum, so the result is the
// lexicographically smallest optimal subset.
inline UserSet select_users(const NetworkTopology& topo, int k = 4) {
    const int n = topo.node_count();
    if (k > n) throw TopologyError("cannot select " + std::to_string(k) + " users from " +
                                   std::to_string(n) + " nodes");
    if (k < 2) throw TopologyError("user selection needs k >= 2");

    auto dist = all_pairs_shortest_paths(topo);

    // node indices sorted by id
    std::vector<int> by_id(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) by_id[static_cast<std::size_t>(topo.lex_rank(v))] = v;

    std::vector<int> pick(static_cast<std::size_t>(k));
    std::vector<int> best;
    double best_sum = -1.0;

    // Depth-first over combinations of positions in by_id (ascending), with
    // the pairwise sum accumulated incrementally.
    auto recurse = [&](auto&& self, int depth, int start, double sum) -> void {
        if (depth == k) {
            if (sum > best_sum) {
                best_sum = sum;
                best = pick;
            }
            return;
        }
        for (int pos = start; pos <= n - (k - depth); ++pos) {
            int v = by_id[static_cast<std::size_t>(pos)];
            double add = 0.0;
            for (int j = 0; j < depth; ++j) add += dist.at(pick[static_cast<std::size_t>(j)], v);
            pick[static_cast<std::size_t>(depth)] = v;
            self(self, depth + 1, pos + 1, sum + add);
        }
    };
    recurse(recurse, 0, 0, 0.0);

    std::vector<std::string> ids;
    ids.reserve(best.size());
    for (int v : best) ids.push_back(topo.node(v).id);
    return UserSet(topo, std::move(ids));
}

} // namespace ghznet
