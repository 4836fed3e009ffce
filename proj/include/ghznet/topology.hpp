#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ghznet/common.hpp"

namespace ghznet {

struct TopologyNode {
    std::string id;
    std::optional<double> x; // planar coordinates, only used for rendering
    std::optional<double> y;
};

struct TopologyEdge {
    int a = -1; // node indices, a < b
    int b = -1;
    double length_km = 0.0;
    // Identity derived from the endpoint ids, stable under node removal and
    // reindexing. Drives the per-edge random stream.
    std::uint64_t uid = 0;
};

namespace detail {

inline std::uint64_t edge_uid(const std::string& id_a, const std::string& id_b) {
    const std::string& lo = id_a < id_b ? id_a : id_b;
    const std::string& hi = id_a < id_b ? id_b : id_a;
    return fnv1a64(lo + '\x1f' + hi);
}

} // namespace detail

// Undirected, simple, connected weighted graph of repeater nodes and fiber
// edges. Immutable after construction; safe to share across threads.
class NetworkTopology {
public:
    struct Adjacent {
        int node;
        int edge;
    };

    NetworkTopology(std::string name, std::vector<TopologyNode> nodes,
                    std::vector<std::tuple<std::string, std::string, double>> edges)
        : name_(std::move(name)), nodes_(std::move(nodes)) {
        build(edges);
    }

    const std::string& name() const { return name_; }
    int node_count() const { return static_cast<int>(nodes_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const std::vector<TopologyNode>& nodes() const { return nodes_; }
    const std::vector<TopologyEdge>& edges() const { return edges_; }
    const TopologyNode& node(int i) const { return nodes_.at(static_cast<std::size_t>(i)); }
    const TopologyEdge& edge(int i) const { return edges_.at(static_cast<std::size_t>(i)); }
    const std::vector<Adjacent>& adjacent(int node) const {
        return adjacency_.at(static_cast<std::size_t>(node));
    }
    int degree(int node) const { return static_cast<int>(adjacent(node).size()); }

    int index_of(const std::string& id) const {
        auto it = index_.find(id);
        if (it == index_.end()) throw TopologyError("unknown node id '" + id + "'");
        return it->second;
    }
    bool has_node(const std::string& id) const { return index_.count(id) != 0; }

    // Rank of the node id in lexicographic order; used for all tie-breaking.
    int lex_rank(int node) const { return lex_rank_.at(static_cast<std::size_t>(node)); }

    double max_edge_length() const {
        double m = 0.0;
        for (const auto& e : edges_) m = std::max(m, e.length_km);
        return m;
    }

    // New topology with all lengths scaled so the longest edge is exactly
    // target_max_km. Length ratios are preserved.
    NetworkTopology rescaled(double target_max_km = 100.0) const {
        if (target_max_km <= 0.0) throw TopologyError("rescale target must be positive");
        const double max_len = max_edge_length();
        const double scale = target_max_km / max_len;
        std::vector<std::tuple<std::string, std::string, double>> scaled;
        scaled.reserve(edges_.size());
        for (const auto& e : edges_) {
            double len = e.length_km == max_len ? target_max_km : e.length_km * scale;
            scaled.emplace_back(nodes_[static_cast<std::size_t>(e.a)].id,
                                nodes_[static_cast<std::size_t>(e.b)].id, len);
        }
        return NetworkTopology(name_, nodes_, std::move(scaled));
    }

    // New topology with the given nodes (by id) and their incident edges
    // removed. Does not require the result to stay connected when
    // allow_disconnected is set; trimming feasibility guards check first.
    NetworkTopology without_nodes(const std::set<std::string>& removed) const {
        std::vector<TopologyNode> keep;
        keep.reserve(nodes_.size());
        for (const auto& n : nodes_)
            if (!removed.count(n.id)) keep.push_back(n);
        std::vector<std::tuple<std::string, std::string, double>> kept_edges;
        for (const auto& e : edges_) {
            const auto& ia = nodes_[static_cast<std::size_t>(e.a)].id;
            const auto& ib = nodes_[static_cast<std::size_t>(e.b)].id;
            if (!removed.count(ia) && !removed.count(ib))
                kept_edges.emplace_back(ia, ib, e.length_km);
        }
        return NetworkTopology(name_, std::move(keep), std::move(kept_edges));
    }

    // Connectivity of an arbitrary node subset within an edge-filtered view.
    // alive == nullptr means all edges.
    bool nodes_connected(const std::vector<int>& subset, const std::vector<char>* alive = nullptr) const {
        if (subset.size() <= 1) return true;
        std::vector<int> parent(nodes_.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int v) {
            while (parent[static_cast<std::size_t>(v)] != v) {
                parent[static_cast<std::size_t>(v)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
                v = parent[static_cast<std::size_t>(v)];
            }
            return v;
        };
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            if (alive && !(*alive)[i]) continue;
            int ra = find(edges_[i].a), rb = find(edges_[i].b);
            if (ra != rb) parent[static_cast<std::size_t>(ra)] = rb;
        }
        int root = find(subset.front());
        for (int v : subset)
            if (find(v) != root) return false;
        return true;
    }

private:
    void build(const std::vector<std::tuple<std::string, std::string, double>>& edge_specs) {
        if (nodes_.empty()) throw TopologyError("topology '" + name_ + "' has no nodes");
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (nodes_[i].id.empty()) throw TopologyError("empty node id");
            if (!index_.emplace(nodes_[i].id, static_cast<int>(i)).second)
                throw TopologyError("duplicate node id '" + nodes_[i].id + "'");
        }
        adjacency_.assign(nodes_.size(), {});
        std::set<std::pair<int, int>> seen;
        edges_.reserve(edge_specs.size());
        for (const auto& [ida, idb, len] : edge_specs) {
            int a = index_of(ida), b = index_of(idb);
            if (a == b) throw TopologyError("self-loop at node '" + ida + "'");
            if (!(len > 0.0))
                throw TopologyError("non-positive length on edge (" + ida + ", " + idb + ")");
            auto key = std::minmax(a, b);
            if (!seen.insert(key).second)
                throw TopologyError("duplicate edge (" + ida + ", " + idb + ")");
            TopologyEdge e;
            e.a = key.first;
            e.b = key.second;
            e.length_km = len;
            e.uid = detail::edge_uid(ida, idb);
            int idx = static_cast<int>(edges_.size());
            edges_.push_back(e);
            adjacency_[static_cast<std::size_t>(e.a)].push_back({e.b, idx});
            adjacency_[static_cast<std::size_t>(e.b)].push_back({e.a, idx});
        }

        std::vector<int> all(nodes_.size());
        std::iota(all.begin(), all.end(), 0);
        if (!nodes_connected(all))
            throw TopologyError("topology '" + name_ + "' is disconnected");

        std::vector<int> order(nodes_.size());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int l, int r) {
            return nodes_[static_cast<std::size_t>(l)].id < nodes_[static_cast<std::size_t>(r)].id;
        });
        lex_rank_.assign(nodes_.size(), 0);
        for (std::size_t rank = 0; rank < order.size(); ++rank)
            lex_rank_[static_cast<std::size_t>(order[rank])] = static_cast<int>(rank);
    }

    std::string name_;
    std::vector<TopologyNode> nodes_;
    std::vector<TopologyEdge> edges_;
    std::vector<std::vector<Adjacent>> adjacency_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> lex_rank_;
};

// Ordered set of user node ids. Protocols need at least three users; two are
// permitted so degenerate path instances remain testable.
class UserSet {
public:
    UserSet(const NetworkTopology& topo, std::vector<std::string> ids) {
        if (ids.size() < 2) throw TopologyError("user set needs at least 2 nodes");
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw TopologyError("duplicate user id");
        ids_ = std::move(ids);
        indices_.reserve(ids_.size());
        for (const auto& id : ids_) indices_.push_back(topo.index_of(id));
    }

    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<int>& indices() const { return indices_; }
    std::size_t size() const { return ids_.size(); }
    bool contains_index(int node) const {
        return std::find(indices_.begin(), indices_.end(), node) != indices_.end();
    }
    bool contains_id(const std::string& id) const {
        return std::binary_search(ids_.begin(), ids_.end(), id);
    }

private:
    std::vector<std::string> ids_;  // sorted lexicographically
    std::vector<int> indices_;      // aligned with ids_
};

} // namespace ghznet
