#pragma once

#include <limits>
#include <queue>
#include <vector>

#include "ghznet/topology.hpp"

namespace ghznet {

inline constexpr double kInfDistance = std::numeric_limits<double>::infinity();

// Edge-filtered, read-only view of a topology. alive == nullptr exposes every
// edge; otherwise alive must be indexed by edge id.
struct GraphView {
    const NetworkTopology* topo = nullptr;
    const std::vector<char>* alive = nullptr;

    GraphView(const NetworkTopology& t) : topo(&t) {} // NOLINT: implicit by design
    GraphView(const NetworkTopology& t, const std::vector<char>& mask) : topo(&t), alive(&mask) {}

    bool edge_alive(int edge) const { return !alive || (*alive)[static_cast<std::size_t>(edge)]; }
};

struct ShortestPathTree {
    std::vector<double> dist;     // km from source; kInfDistance if unreachable
    std::vector<int> parent;      // predecessor node, -1 at source/unreachable
    std::vector<int> parent_edge; // edge taken into the node, -1 likewise
};

// Dijkstra over km lengths. Equal-length alternatives resolve toward the
// lexicographically smaller predecessor so expanded paths are reproducible.
inline ShortestPathTree dijkstra(const GraphView& g, int source) {
    const NetworkTopology& t = *g.topo;
    const auto n = static_cast<std::size_t>(t.node_count());
    ShortestPathTree out;
    out.dist.assign(n, kInfDistance);
    out.parent.assign(n, -1);
    out.parent_edge.assign(n, -1);
    out.dist[static_cast<std::size_t>(source)] = 0.0;

    using Item = std::pair<double, int>; // (dist, lex rank-ordered node)
    auto cmp = [&t](const Item& a, const Item& b) {
        if (a.first != b.first) return a.first > b.first;
        return t.lex_rank(a.second) > t.lex_rank(b.second);
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    heap.push({0.0, source});
    std::vector<char> done(n, 0);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[static_cast<std::size_t>(u)]) continue;
        done[static_cast<std::size_t>(u)] = 1;
        for (const auto& adj : t.adjacent(u)) {
            if (!g.edge_alive(adj.edge)) continue;
            double nd = d + t.edge(adj.edge).length_km;
            auto v = static_cast<std::size_t>(adj.node);
            if (nd < out.dist[v]) {
                out.dist[v] = nd;
                out.parent[v] = u;
                out.parent_edge[v] = adj.edge;
                heap.push({nd, adj.node});
            } else if (nd == out.dist[v] && out.parent[v] != -1 &&
                       t.lex_rank(u) < t.lex_rank(out.parent[v])) {
                out.parent[v] = u;
                out.parent_edge[v] = adj.edge;
                heap.push({nd, adj.node});
            }
        }
    }
    return out;
}

// Hop-count BFS distances (for hop-based centrality metrics).
inline std::vector<int> bfs_hops(const GraphView& g, int source) {
    const NetworkTopology& t = *g.topo;
    std::vector<int> hops(static_cast<std::size_t>(t.node_count()), -1);
    std::queue<int> q;
    hops[static_cast<std::size_t>(source)] = 0;
    q.push(source);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (const auto& adj : t.adjacent(u)) {
            if (!g.edge_alive(adj.edge)) continue;
            auto v = static_cast<std::size_t>(adj.node);
            if (hops[v] < 0) {
                hops[v] = hops[static_cast<std::size_t>(u)] + 1;
                q.push(adj.node);
            }
        }
    }
    return hops;
}

// Symmetric all-pairs matrix; d(u,u) = 0.
class DistanceMatrix {
public:
    DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}
    double& at(int u, int v) {
        return d_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
                  static_cast<std::size_t>(v)];
    }
    double at(int u, int v) const {
        return d_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
                  static_cast<std::size_t>(v)];
    }
    int size() const { return n_; }

private:
    int n_;
    std::vector<double> d_;
};

inline DistanceMatrix all_pairs_shortest_paths(const NetworkTopology& topo) {
    DistanceMatrix m(topo.node_count());
    GraphView g(topo);
    for (int s = 0; s < topo.node_count(); ++s) {
        auto tree = dijkstra(g, s);
        for (int v = 0; v < topo.node_count(); ++v)
            m.at(s, v) = tree.dist[static_cast<std::size_t>(v)];
    }
    return m;
}

inline DistanceMatrix all_pairs_hop_counts(const NetworkTopology& topo) {
    DistanceMatrix m(topo.node_count());
    GraphView g(topo);
    for (int s = 0; s < topo.node_count(); ++s) {
        auto hops = bfs_hops(g, s);
        for (int v = 0; v < topo.node_count(); ++v)
            m.at(s, v) = static_cast<double>(hops[static_cast<std::size_t>(v)]);
    }
    return m;
}

} // namespace ghznet
