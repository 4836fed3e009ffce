#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <vector>

#include "ghznet/routing.hpp"
#include "ghznet/shortest_paths.hpp"
#include "ghznet/topology.hpp"

namespace ghznet {

namespace detail {

// Min-cost max-flow via successive shortest augmenting paths. Costs are
// non-negative; arc iteration order is fixed by insertion, so results are
// deterministic for a given build order.
class MinCostFlow {
public:
    explicit MinCostFlow(int node_count) : out_(static_cast<std::size_t>(node_count)) {}

    int add_arc(int from, int to, int cap, double cost) {
        int idx = static_cast<int>(arcs_.size());
        arcs_.push_back({to, cost, cap});
        arcs_.push_back({from, -cost, 0});
        out_[static_cast<std::size_t>(from)].push_back(idx);
        out_[static_cast<std::size_t>(to)].push_back(idx + 1);
        return idx;
    }

    // Augments unit-bottleneck shortest paths until either max_units of flow
    // are routed or the sink is unreachable. Returns (flow, cost).
    std::pair<int, double> run(int src, int snk, int max_units) {
        int flow = 0;
        double cost = 0.0;
        while (flow < max_units) {
            auto [found, path_cost] = shortest_augmenting_path(src, snk);
            if (!found) break;
            int bottleneck = std::numeric_limits<int>::max();
            for (int v = snk; v != src;) {
                int a = parent_arc_[static_cast<std::size_t>(v)];
                bottleneck = std::min(bottleneck, arcs_[static_cast<std::size_t>(a)].cap);
                v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
            }
            bottleneck = std::min(bottleneck, max_units - flow);
            for (int v = snk; v != src;) {
                int a = parent_arc_[static_cast<std::size_t>(v)];
                arcs_[static_cast<std::size_t>(a)].cap -= bottleneck;
                arcs_[static_cast<std::size_t>(a ^ 1)].cap += bottleneck;
                v = arcs_[static_cast<std::size_t>(a ^ 1)].to;
            }
            flow += bottleneck;
            cost += path_cost * bottleneck;
        }
        return {flow, cost};
    }

    // Flow on the forward arc with the given index.
    int flow_on(int arc_index) const { return arcs_[static_cast<std::size_t>(arc_index ^ 1)].cap; }

    const std::vector<int>& arcs_out(int v) const { return out_[static_cast<std::size_t>(v)]; }
    int arc_to(int arc_index) const { return arcs_[static_cast<std::size_t>(arc_index)].to; }

private:
    struct Arc {
        int to;
        double cost;
        int cap;
    };

    // Bellman-Ford queue relaxation; exact shortest paths with deterministic
    // parent selection (strict improvement only).
    std::pair<bool, double> shortest_augmenting_path(int src, int snk) {
        const auto n = out_.size();
        dist_.assign(n, std::numeric_limits<double>::infinity());
        parent_arc_.assign(n, -1);
        in_queue_.assign(n, 0);
        dist_[static_cast<std::size_t>(src)] = 0.0;
        std::deque<int> queue{src};
        in_queue_[static_cast<std::size_t>(src)] = 1;
        while (!queue.empty()) {
            int u = queue.front();
            queue.pop_front();
            in_queue_[static_cast<std::size_t>(u)] = 0;
            for (int a : out_[static_cast<std::size_t>(u)]) {
                const Arc& arc = arcs_[static_cast<std::size_t>(a)];
                if (arc.cap <= 0) continue;
                double nd = dist_[static_cast<std::size_t>(u)] + arc.cost;
                if (nd < dist_[static_cast<std::size_t>(arc.to)]) {
                    dist_[static_cast<std::size_t>(arc.to)] = nd;
                    parent_arc_[static_cast<std::size_t>(arc.to)] = a;
                    if (!in_queue_[static_cast<std::size_t>(arc.to)]) {
                        in_queue_[static_cast<std::size_t>(arc.to)] = 1;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        double d = dist_[static_cast<std::size_t>(snk)];
        return {d < std::numeric_limits<double>::infinity(), d};
    }

    std::vector<Arc> arcs_;
    std::vector<std::vector<int>> out_;
    std::vector<double> dist_;
    std::vector<int> parent_arc_;
    std::vector<char> in_queue_;
};

} // namespace detail

struct DisjointPathsResult {
    int flow = 0;                        // number of internally vertex-disjoint paths found
    std::vector<std::vector<int>> paths; // node sequences, user -> centre
    double total_length_km = 0.0;        // minimum over all maximum flows
};

// Minimum-cost maximum set of internally vertex-disjoint paths from the
// centre to the users, on the node-split unit-capacity network. Users are
// never interior nodes of another path; a user centre contributes no path for
// itself (its trivial path is handled by the caller).
inline DisjointPathsResult max_disjoint_paths(const GraphView& g, int centre,
                                              const std::vector<int>& users) {
    const NetworkTopology& topo = *g.topo;
    const int n = topo.node_count();
    const int src = 2 * n, snk = 2 * n + 1;
    auto in_node = [](int v) { return 2 * v; };
    auto out_node = [](int v) { return 2 * v + 1; };

    std::vector<char> is_user(static_cast<std::size_t>(n), 0);
    int required = 0;
    for (int u : users)
        if (u != centre) {
            is_user[static_cast<std::size_t>(u)] = 1;
            ++required;
        }

    detail::MinCostFlow net(2 * n + 2);
    net.add_arc(src, out_node(centre), required, 0.0);
    for (int v = 0; v < n; ++v) {
        if (v == centre) continue;
        if (is_user[static_cast<std::size_t>(v)])
            net.add_arc(in_node(v), snk, 1, 0.0);
        else
            net.add_arc(in_node(v), out_node(v), 1, 0.0);
    }
    for (int e = 0; e < topo.edge_count(); ++e) {
        if (!g.edge_alive(e)) continue;
        const auto& edge = topo.edge(e);
        net.add_arc(out_node(edge.a), in_node(edge.b), 1, edge.length_km);
        net.add_arc(out_node(edge.b), in_node(edge.a), 1, edge.length_km);
    }

    auto [flow, cost] = net.run(src, snk, required);

    DisjointPathsResult result;
    result.flow = flow;
    result.total_length_km = cost;

    // Decompose: walk flow-carrying arcs from the centre, consuming one unit
    // per step. Unit node capacities make the decomposition unambiguous.
    std::vector<int> consumed(static_cast<std::size_t>(flow) * 0); // placeholder, per-arc below
    std::vector<int> used_arc; // arc indices already fully consumed
    std::vector<int> remaining; // remaining decomposable flow per arc
    // remaining flow per arc index
    // (lazily sized: arc indices are even for forward arcs)
    auto take_step = [&](int from, std::vector<int>& taken) -> int {
        for (int a : net.arcs_out(from)) {
            if (a & 1) continue; // skip residual arcs
            int f = net.flow_on(a) - taken[static_cast<std::size_t>(a) / 2];
            if (f > 0) {
                taken[static_cast<std::size_t>(a) / 2] += 1;
                return net.arc_to(a);
            }
        }
        return -1;
    };
    std::vector<int> taken;
    taken.assign(static_cast<std::size_t>(2 * topo.edge_count() + n + 4), 0);
    for (int unit = 0; unit < flow; ++unit) {
        std::vector<int> path{centre};
        int pos = out_node(centre);
        // consume the source arc
        while (true) {
            int next = take_step(pos, taken);
            if (next < 0) throw Error("flow decomposition failed");
            if (next == snk) break;
            int v = next / 2;
            if (next == in_node(v)) {
                path.push_back(v);
                if (is_user[static_cast<std::size_t>(v)]) {
                    // terminal: consume its sink arc next iteration
                    pos = in_node(v);
                } else {
                    pos = in_node(v);
                }
            } else {
                pos = next; // moved across a split arc to v_out
            }
        }
        std::reverse(path.begin(), path.end());
        result.paths.push_back(std::move(path));
    }
    // The source arc is shared by all units; drop the double-consumed
    // bookkeeping by construction above (source arc has cap == required).
    std::sort(result.paths.begin(), result.paths.end(), [&](const auto& l, const auto& r) {
        return topo.lex_rank(l.front()) < topo.lex_rank(r.front());
    });
    return result;
}

// Exhaustive centre sweep: every node (users included) is a candidate. The
// returned star achieves full flow with minimum total length; ties keep the
// lexicographically smallest centre id. Empty when no candidate reaches full
// flow.
inline std::optional<StarSolution> select_centre(const GraphView& g, const UserSet& users) {
    const NetworkTopology& topo = *g.topo;
    const int n = topo.node_count();
    std::vector<int> candidates(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) candidates[static_cast<std::size_t>(topo.lex_rank(v))] = v;

    std::optional<StarSolution> best;
    for (int centre : candidates) {
        int required = static_cast<int>(users.size()) - (users.contains_index(centre) ? 1 : 0);
        auto res = max_disjoint_paths(g, centre, users.indices());
        if (res.flow != required) continue;
        if (!best || res.total_length_km < best->total_length_km) {
            StarSolution s;
            s.centre = centre;
            s.paths = res.paths;
            if (users.contains_index(centre)) s.paths.push_back({centre});
            std::sort(s.paths.begin(), s.paths.end(), [&](const auto& l, const auto& r) {
                return topo.lex_rank(l.front()) < topo.lex_rank(r.front());
            });
            s.total_length_km = res.total_length_km;
            best = std::move(s);
        }
    }
    return best;
}

// Suitability filter: does any centre admit a full set of disjoint paths?
inline bool star_feasible(const NetworkTopology& topo, const UserSet& users) {
    return select_centre(GraphView(topo), users).has_value();
}

// Maximum number of internally vertex-disjoint s-t paths (s, t unsplit).
inline int max_vertex_disjoint_st_paths(const NetworkTopology& topo, int s, int t, int limit) {
    const int n = topo.node_count();
    const int src = 2 * n, snk = 2 * n + 1;
    detail::MinCostFlow net(2 * n + 2);
    net.add_arc(src, 2 * s + 1, limit, 0.0);
    net.add_arc(2 * t, snk, limit, 0.0);
    for (int v = 0; v < n; ++v)
        if (v != s && v != t) net.add_arc(2 * v, 2 * v + 1, 1, 0.0);
    for (const auto& edge : topo.edges()) {
        int e = static_cast<int>(&edge - topo.edges().data());
        (void)e;
        net.add_arc(2 * edge.a + 1, 2 * edge.b, 1, 0.0);
        net.add_arc(2 * edge.b + 1, 2 * edge.a, 1, 0.0);
    }
    return net.run(src, snk, limit).first;
}

// Vertex connectivity: minimum over non-adjacent pairs of the maximum number
// of internally disjoint paths (Menger). Complete graphs are n-1 by
// convention.
inline int vertex_connectivity(const NetworkTopology& topo) {
    const int n = topo.node_count();
    if (n <= 1) return 0;
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(n),
                                       std::vector<char>(static_cast<std::size_t>(n), 0));
    for (const auto& e : topo.edges()) {
        adj[static_cast<std::size_t>(e.a)][static_cast<std::size_t>(e.b)] = 1;
        adj[static_cast<std::size_t>(e.b)][static_cast<std::size_t>(e.a)] = 1;
    }
    int best = n - 1; // complete-graph fallback; also an upper bound
    for (int v = 0; v < n; ++v) best = std::min(best, topo.degree(v));
    bool found_pair = false;
    for (int s = 0; s < n; ++s)
        for (int t = s + 1; t < n; ++t) {
            if (adj[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)]) continue;
            found_pair = true;
            if (best == 0) return 0;
            best = std::min(best, max_vertex_disjoint_st_paths(topo, s, t, best));
        }
    return found_pair ? best : n - 1;
}

} // namespace ghznet
