#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "ghznet/shortest_paths.hpp"
#include "ghznet/topology.hpp"

namespace ghznet {

// Centre plus one internally vertex-disjoint path per user. Paths run
// user -> centre; when the centre is itself a user its path is just {centre}.
struct StarSolution {
    int centre = -1;
    std::vector<std::vector<int>> paths;
    double total_length_km = 0.0;
};

// Tree spanning the users; every leaf is a user. Edges are topology edge
// indices, sorted ascending.
struct TreeSolution {
    std::vector<int> edges;
    double total_length_km = 0.0;
};

struct RoutingSolution {
    enum class Variant { star, tree };
    Variant variant = Variant::tree;
    std::variant<StarSolution, TreeSolution> payload;
    std::vector<int> used_nodes; // sorted ascending
    std::vector<int> used_edges; // sorted ascending
    double total_length_km = 0.0;
};

namespace detail {

inline std::vector<int> star_edges(const NetworkTopology& topo, const StarSolution& s) {
    std::set<int> edges;
    for (const auto& path : s.paths) {
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            int found = -1;
            for (const auto& adj : topo.adjacent(path[i]))
                if (adj.node == path[i + 1]) {
                    found = adj.edge;
                    break;
                }
            if (found < 0) throw Error("star path uses a non-existent edge");
            edges.insert(found);
        }
    }
    return {edges.begin(), edges.end()};
}

inline std::vector<int> tree_nodes(const NetworkTopology& topo, const TreeSolution& t) {
    std::set<int> nodes;
    for (int e : t.edges) {
        nodes.insert(topo.edge(e).a);
        nodes.insert(topo.edge(e).b);
    }
    return {nodes.begin(), nodes.end()};
}

} // namespace detail

inline RoutingSolution make_star_routing_solution(const NetworkTopology& topo, StarSolution star) {
    RoutingSolution rs;
    rs.variant = RoutingSolution::Variant::star;
    rs.used_edges = detail::star_edges(topo, star);
    std::set<int> nodes;
    for (const auto& p : star.paths) nodes.insert(p.begin(), p.end());
    rs.used_nodes.assign(nodes.begin(), nodes.end());
    rs.total_length_km = star.total_length_km;
    rs.payload = std::move(star);
    return rs;
}

inline RoutingSolution make_tree_routing_solution(const NetworkTopology& topo, TreeSolution tree) {
    RoutingSolution rs;
    rs.variant = RoutingSolution::Variant::tree;
    rs.used_nodes = detail::tree_nodes(topo, tree);
    rs.used_edges = tree.edges;
    rs.total_length_km = tree.total_length_km;
    rs.payload = std::move(tree);
    return rs;
}

// Direct inspection of the disjointness and shape invariants of a star
// solution: paths share no node except the centre, each path starts at its
// user and ends at the centre, every path edge exists (and is alive).
inline bool verify_star_solution(const GraphView& g, const StarSolution& s,
                                 const std::vector<int>& users) {
    const NetworkTopology& topo = *g.topo;
    std::vector<int> seen(static_cast<std::size_t>(topo.node_count()), 0);
    std::set<int> remaining(users.begin(), users.end());
    bool centre_is_user = remaining.count(s.centre) != 0;
    std::size_t expected = centre_is_user ? users.size() - 1 : users.size();
    std::size_t nontrivial = 0;
    for (const auto& path : s.paths) {
        if (path.empty() || path.back() != s.centre) return false;
        if (!remaining.erase(path.front())) return false; // origin must be a distinct user
        if (path.size() == 1) {
            if (path.front() != s.centre || !centre_is_user) return false;
            continue;
        }
        ++nontrivial;
        for (std::size_t i = 0; i + 1 < path.size(); ++i) {
            int found = -1;
            for (const auto& adj : topo.adjacent(path[i]))
                if (adj.node == path[i + 1] && g.edge_alive(adj.edge)) {
                    found = adj.edge;
                    break;
                }
            if (found < 0) return false;
        }
        for (int v : path) {
            if (v == s.centre) continue;
            if (seen[static_cast<std::size_t>(v)]++) return false; // interior overlap
        }
    }
    return remaining.empty() && nontrivial == expected;
}

// Tree invariants: connected, acyclic, spans the users, all leaves are users.
inline bool verify_tree_solution(const GraphView& g, const TreeSolution& t,
                                 const std::vector<int>& users) {
    const NetworkTopology& topo = *g.topo;
    if (t.edges.empty()) return users.size() <= 1;
    for (int e : t.edges)
        if (!g.edge_alive(e)) return false;
    std::map<int, int> deg;
    for (int e : t.edges) {
        deg[topo.edge(e).a]++;
        deg[topo.edge(e).b]++;
    }
    if (deg.size() != t.edges.size() + 1) return false; // |V| = |E| + 1
    std::vector<int> nodes;
    nodes.reserve(deg.size());
    for (const auto& [v, d] : deg) nodes.push_back(v);
    std::vector<char> alive(static_cast<std::size_t>(topo.edge_count()), 0);
    for (int e : t.edges) alive[static_cast<std::size_t>(e)] = 1;
    if (!topo.nodes_connected(nodes, &alive)) return false;
    std::set<int> user_set(users.begin(), users.end());
    for (int u : users)
        if (!deg.count(u)) return false;
    for (const auto& [v, d] : deg)
        if (d == 1 && !user_set.count(v)) return false;
    return true;
}

inline nlohmann::json routing_solution_to_json(const NetworkTopology& topo,
                                               const RoutingSolution& rs) {
    nlohmann::json doc;
    doc["variant"] = rs.variant == RoutingSolution::Variant::star ? "star" : "tree";
    if (rs.variant == RoutingSolution::Variant::star)
        doc["centre"] = topo.node(std::get<StarSolution>(rs.payload).centre).id;
    doc["nodes"] = nlohmann::json::array();
    for (int v : rs.used_nodes) doc["nodes"].push_back(topo.node(v).id);
    doc["edges"] = nlohmann::json::array();
    for (int e : rs.used_edges)
        doc["edges"].push_back({topo.node(topo.edge(e).a).id, topo.node(topo.edge(e).b).id});
    doc["total_length_km"] = rs.total_length_km;
    return doc;
}

} // namespace ghznet
