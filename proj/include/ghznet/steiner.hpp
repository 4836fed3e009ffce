#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <vector>

#include "ghznet/routing.hpp"
#include "ghznet/shortest_paths.hpp"
#include "ghznet/topology.hpp"

namespace ghznet {

namespace detail {

class DisjointSets {
public:
    explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
        std::iota(parent_.begin(), parent_.end(), 0);
    }
    int find(int v) {
        while (parent_[static_cast<std::size_t>(v)] != v) {
            parent_[static_cast<std::size_t>(v)] =
                parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
            v = parent_[static_cast<std::size_t>(v)];
        }
        return v;
    }
    bool unite(int a, int b) {
        int ra = find(a), rb = find(b);
        if (ra == rb) return false;
        parent_[static_cast<std::size_t>(ra)] = rb;
        return true;
    }

private:
    std::vector<int> parent_;
};

// MST over a candidate edge set, then iterative removal of non-terminal
// leaves. Both Steiner constructions share this final contraction.
inline TreeSolution mst_and_prune(const NetworkTopology& topo, std::vector<int> candidate_edges,
                                  const std::vector<int>& terminals) {
    std::sort(candidate_edges.begin(), candidate_edges.end());
    candidate_edges.erase(std::unique(candidate_edges.begin(), candidate_edges.end()),
                          candidate_edges.end());
    std::stable_sort(candidate_edges.begin(), candidate_edges.end(), [&](int l, int r) {
        return topo.edge(l).length_km < topo.edge(r).length_km;
    });
    DisjointSets dsu(topo.node_count());
    std::vector<int> tree;
    for (int e : candidate_edges)
        if (dsu.unite(topo.edge(e).a, topo.edge(e).b)) tree.push_back(e);

    std::vector<char> is_terminal(static_cast<std::size_t>(topo.node_count()), 0);
    for (int t : terminals) is_terminal[static_cast<std::size_t>(t)] = 1;
    std::vector<int> deg(static_cast<std::size_t>(topo.node_count()), 0);
    std::vector<char> in_tree(static_cast<std::size_t>(topo.edge_count()), 0);
    for (int e : tree) {
        in_tree[static_cast<std::size_t>(e)] = 1;
        deg[static_cast<std::size_t>(topo.edge(e).a)]++;
        deg[static_cast<std::size_t>(topo.edge(e).b)]++;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (int e : tree) {
            if (!in_tree[static_cast<std::size_t>(e)]) continue;
            for (int v : {topo.edge(e).a, topo.edge(e).b}) {
                if (deg[static_cast<std::size_t>(v)] == 1 && !is_terminal[static_cast<std::size_t>(v)]) {
                    in_tree[static_cast<std::size_t>(e)] = 0;
                    deg[static_cast<std::size_t>(topo.edge(e).a)]--;
                    deg[static_cast<std::size_t>(topo.edge(e).b)]--;
                    changed = true;
                    break;
                }
            }
        }
    }
    TreeSolution out;
    for (int e : tree)
        if (in_tree[static_cast<std::size_t>(e)]) {
            out.edges.push_back(e);
            out.total_length_km += topo.edge(e).length_km;
        }
    std::sort(out.edges.begin(), out.edges.end());
    return out;
}

} // namespace detail

// Kou-Markowsky-Berman construction: MST of the terminals' metric closure,
// expanded back to shortest paths, re-spanned and pruned.
inline TreeSolution kou_steiner(const GraphView& g, const UserSet& terminals) {
    const NetworkTopology& topo = *g.topo;
    const auto& terms = terminals.indices(); // lex-sorted
    if (terms.size() < 2) return {};

    std::vector<ShortestPathTree> trees;
    trees.reserve(terms.size());
    for (int t : terms) trees.push_back(dijkstra(g, t));

    struct ClosureEdge {
        double w;
        int i, j; // positions in terms
    };
    std::vector<ClosureEdge> closure;
    for (std::size_t i = 0; i < terms.size(); ++i)
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            double w = trees[i].dist[static_cast<std::size_t>(terms[j])];
            if (w == kInfDistance)
                throw InfeasibleError("users are disconnected in the given graph");
            closure.push_back({w, static_cast<int>(i), static_cast<int>(j)});
        }
    std::stable_sort(closure.begin(), closure.end(),
                     [](const ClosureEdge& l, const ClosureEdge& r) { return l.w < r.w; });

    detail::DisjointSets dsu(static_cast<int>(terms.size()));
    std::vector<int> expansion;
    for (const auto& ce : closure) {
        if (!dsu.unite(ce.i, ce.j)) continue;
        // walk the shortest path from terms[j] back to terms[i]
        const auto& tree = trees[static_cast<std::size_t>(ce.i)];
        for (int v = terms[static_cast<std::size_t>(ce.j)]; tree.parent[static_cast<std::size_t>(v)] != -1;
             v = tree.parent[static_cast<std::size_t>(v)])
            expansion.push_back(tree.parent_edge[static_cast<std::size_t>(v)]);
    }
    return detail::mst_and_prune(topo, std::move(expansion), terms);
}

// Mehlhorn construction: one multi-source shortest-path pass partitions nodes
// into terminal Voronoi regions; boundary edges induce the terminal graph.
inline TreeSolution mehlhorn_steiner(const GraphView& g, const UserSet& terminals) {
    const NetworkTopology& topo = *g.topo;
    const auto& terms = terminals.indices();
    if (terms.size() < 2) return {};
    const auto n = static_cast<std::size_t>(topo.node_count());

    std::vector<double> dist(n, kInfDistance);
    std::vector<int> base(n, -1), parent(n, -1), parent_edge(n, -1);
    using Item = std::pair<double, int>;
    auto cmp = [&topo](const Item& a, const Item& b) {
        if (a.first != b.first) return a.first > b.first;
        return topo.lex_rank(a.second) > topo.lex_rank(b.second);
    };
    std::priority_queue<Item, std::vector<Item>, decltype(cmp)> heap(cmp);
    for (int t : terms) {
        dist[static_cast<std::size_t>(t)] = 0.0;
        base[static_cast<std::size_t>(t)] = t;
        heap.push({0.0, t});
    }
    std::vector<char> done(n, 0);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[static_cast<std::size_t>(u)]) continue;
        done[static_cast<std::size_t>(u)] = 1;
        for (const auto& adj : topo.adjacent(u)) {
            if (!g.edge_alive(adj.edge)) continue;
            double nd = d + topo.edge(adj.edge).length_km;
            auto v = static_cast<std::size_t>(adj.node);
            bool better = nd < dist[v];
            bool tie_better = nd == dist[v] && base[v] != -1 &&
                              topo.lex_rank(base[static_cast<std::size_t>(u)]) < topo.lex_rank(base[v]);
            if (better || tie_better) {
                dist[v] = nd;
                base[v] = base[static_cast<std::size_t>(u)];
                parent[v] = u;
                parent_edge[v] = adj.edge;
                heap.push({nd, adj.node});
            }
        }
    }

    // cheapest boundary crossing per terminal pair
    struct Crossing {
        double w;
        int edge;
        int pi, pj; // lex ranks of the two bases, pi < pj
    };
    std::map<std::pair<int, int>, Crossing> cheapest;
    for (int e = 0; e < topo.edge_count(); ++e) {
        if (!g.edge_alive(e)) continue;
        const auto& edge = topo.edge(e);
        int bu = base[static_cast<std::size_t>(edge.a)], bv = base[static_cast<std::size_t>(edge.b)];
        if (bu == -1 || bv == -1 || bu == bv) continue;
        double w = dist[static_cast<std::size_t>(edge.a)] + edge.length_km +
                   dist[static_cast<std::size_t>(edge.b)];
        int ri = topo.lex_rank(bu), rj = topo.lex_rank(bv);
        auto key = std::minmax(ri, rj);
        auto it = cheapest.find(key);
        if (it == cheapest.end() || w < it->second.w)
            cheapest[key] = {w, e, key.first, key.second};
    }

    std::vector<Crossing> aux;
    aux.reserve(cheapest.size());
    for (const auto& [key, c] : cheapest) aux.push_back(c);
    std::stable_sort(aux.begin(), aux.end(),
                     [](const Crossing& l, const Crossing& r) { return l.w < r.w; });

    std::map<int, int> rank_to_pos; // lex rank of terminal -> position
    for (std::size_t i = 0; i < terms.size(); ++i)
        rank_to_pos[topo.lex_rank(terms[i])] = static_cast<int>(i);

    detail::DisjointSets dsu(static_cast<int>(terms.size()));
    std::vector<int> expansion;
    int joined = 1;
    for (const auto& c : aux) {
        if (!dsu.unite(rank_to_pos.at(c.pi), rank_to_pos.at(c.pj))) continue;
        ++joined;
        const auto& edge = topo.edge(c.edge);
        expansion.push_back(c.edge);
        for (int v = edge.a; parent[static_cast<std::size_t>(v)] != -1;
             v = parent[static_cast<std::size_t>(v)])
            expansion.push_back(parent_edge[static_cast<std::size_t>(v)]);
        for (int v = edge.b; parent[static_cast<std::size_t>(v)] != -1;
             v = parent[static_cast<std::size_t>(v)])
            expansion.push_back(parent_edge[static_cast<std::size_t>(v)]);
    }
    if (joined != static_cast<int>(terms.size()))
        throw InfeasibleError("users are disconnected in the given graph");
    return detail::mst_and_prune(topo, std::move(expansion), terms);
}

// Run both heuristics, keep the shorter tree; exact ties prefer Mehlhorn.
inline TreeSolution best_steiner(const GraphView& g, const UserSet& terminals) {
    TreeSolution kou = kou_steiner(g, terminals);
    TreeSolution mehlhorn = mehlhorn_steiner(g, terminals);
    return kou.total_length_km < mehlhorn.total_length_km ? kou : mehlhorn;
}

} // namespace ghznet
