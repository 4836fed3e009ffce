#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ghznet/flow.hpp"
#include "ghznet/linkmodel.hpp"
#include "ghznet/steiner.hpp"
#include "ghznet/topology.hpp"

namespace ghznet {

enum class ProtocolKind { SPS, SPT, MPS, MPT };

inline bool is_single_path(ProtocolKind k) {
    return k == ProtocolKind::SPS || k == ProtocolKind::SPT;
}
inline bool is_star_based(ProtocolKind k) {
    return k == ProtocolKind::SPS || k == ProtocolKind::MPS;
}

inline std::string to_string(ProtocolKind k) {
    switch (k) {
    case ProtocolKind::SPS: return "sps";
    case ProtocolKind::SPT: return "spt";
    case ProtocolKind::MPS: return "mps";
    case ProtocolKind::MPT: return "mpt";
    }
    return "?";
}

inline ProtocolKind protocol_from_string(const std::string& s) {
    if (s == "sps" || s == "SPS") return ProtocolKind::SPS;
    if (s == "spt" || s == "SPT") return ProtocolKind::SPT;
    if (s == "mps" || s == "MPS") return ProtocolKind::MPS;
    if (s == "mpt" || s == "MPT") return ProtocolKind::MPT;
    throw Error("unknown protocol '" + s + "' (expected sps, spt, mps or mpt)");
}

// Counter-based uniform stream: the draw for (slot, edge) depends only on the
// run seed, the slot and the edge's endpoint-id identity. Protocols sampling
// different edge subsets therefore see identical per-edge outcomes (coupled
// randomness), and removing nodes never perturbs the draws of surviving
// edges.
class EdgeSampler {
public:
    explicit EdgeSampler(std::uint64_t seed) : seed_(splitmix64(seed)) {}

    double uniform(std::uint64_t slot, std::uint64_t edge_uid) const {
        return unit_double(hash_combine(hash_combine(seed_, edge_uid), slot));
    }

private:
    std::uint64_t seed_;
};

// Live entanglement links plus the slot counter. Links persist once
// generated; the live set only grows over a run.
struct TimeslotState {
    std::vector<char> live; // indexed by edge
    std::uint64_t timeslot = 0;
};

// One Bernoulli attempt per listed edge, in the given (stable) order.
// Returns the edges whose attempt succeeded this slot.
inline std::vector<int> attempt_generation(const NetworkTopology& topo,
                                           const std::vector<int>& edges, const LinkModel& m,
                                           const EdgeSampler& rng, std::uint64_t slot) {
    std::vector<int> successes;
    for (int e : edges) {
        const auto& edge = topo.edge(e);
        double p = link_success_probability(m, edge.length_km);
        if (rng.uniform(slot, edge.uid) < p) successes.push_back(e);
    }
    return successes;
}

// Star termination test on the live subgraph: all users in one component is a
// cheap necessary condition; the full centre sweep runs only past that gate.
inline std::optional<StarSolution> check_termination_star(const std::vector<char>& live,
                                                          const NetworkTopology& topo,
                                                          const UserSet& users) {
    if (!topo.nodes_connected(users.indices(), &live)) return std::nullopt;
    return select_centre(GraphView(topo, live), users);
}

// Tree termination test: users connected in the live subgraph; the reported
// tree is the better of the two Steiner heuristics on the live links.
inline std::optional<TreeSolution> check_termination_tree(const std::vector<char>& live,
                                                          const NetworkTopology& topo,
                                                          const UserSet& users) {
    if (!topo.nodes_connected(users.indices(), &live)) return std::nullopt;
    return best_steiner(GraphView(topo, live), users);
}

// Routing solution the single-path protocols commit to before any generation
// attempt: minimum-cost star for SPS, best Steiner tree for SPT.
inline RoutingSolution precompute_route(ProtocolKind kind, const NetworkTopology& topo,
                                        const UserSet& users) {
    if (!is_single_path(kind)) throw Error("precompute_route applies to SP protocols only");
    GraphView g(topo);
    if (kind == ProtocolKind::SPS) {
        auto star = select_centre(g, users);
        if (!star)
            throw InfeasibleError("no valid centre-node admits disjoint paths to all users");
        return make_star_routing_solution(topo, std::move(*star));
    }
    return make_tree_routing_solution(topo, best_steiner(g, users));
}

struct ProtocolOutcome {
    std::uint64_t timeslots = 0;
    RoutingSolution solution;
    std::vector<int> used_repeaters; // non-user nodes of the solution, sorted
};

using SlotTraceSink = std::function<void(std::uint64_t slot, const std::vector<int>& new_edges)>;

namespace detail {

inline std::vector<int> non_user_nodes(const std::vector<int>& used_nodes, const UserSet& users) {
    std::vector<int> out;
    for (int v : used_nodes)
        if (!users.contains_index(v)) out.push_back(v);
    return out;
}

} // namespace detail

// Executes one protocol run to termination. SP kinds attempt generation only
// on their precomputed route; MP kinds attempt on every edge and re-check
// routing after each slot.
inline ProtocolOutcome run_protocol_with_route(ProtocolKind kind, const NetworkTopology& topo,
                                               const UserSet& users, const LinkModel& model,
                                               std::uint64_t seed, std::uint64_t max_timeslots,
                                               const RoutingSolution* precomputed,
                                               const SlotTraceSink* trace = nullptr) {
    const EdgeSampler rng(seed);
    const auto edge_count = static_cast<std::size_t>(topo.edge_count());
    std::vector<double> edge_p(edge_count);
    for (std::size_t e = 0; e < edge_count; ++e)
        edge_p[e] = link_success_probability(model, topo.edge(static_cast<int>(e)).length_km);

    std::vector<int> attempt_edges;
    std::size_t route_pending = 0;
    if (is_single_path(kind)) {
        if (!precomputed) throw Error("SP protocol run needs a precomputed route");
        attempt_edges = precomputed->used_edges;
        route_pending = attempt_edges.size();
    } else {
        attempt_edges.resize(edge_count);
        std::iota(attempt_edges.begin(), attempt_edges.end(), 0);
    }

    TimeslotState state;
    state.live.assign(edge_count, 0);

    // incremental user connectivity for the MP gate
    std::vector<int> dsu(static_cast<std::size_t>(topo.node_count()));
    std::iota(dsu.begin(), dsu.end(), 0);
    auto find = [&](int v) {
        while (dsu[static_cast<std::size_t>(v)] != v) {
            dsu[static_cast<std::size_t>(v)] =
                dsu[static_cast<std::size_t>(dsu[static_cast<std::size_t>(v)])];
            v = dsu[static_cast<std::size_t>(v)];
        }
        return v;
    };
    auto users_connected = [&]() {
        int root = find(users.indices().front());
        for (int u : users.indices())
            if (find(u) != root) return false;
        return true;
    };

    std::vector<int> new_edges;
    while (state.timeslot < max_timeslots) {
        ++state.timeslot;
        new_edges.clear();
        for (int e : attempt_edges) {
            if (state.live[static_cast<std::size_t>(e)]) continue;
            if (rng.uniform(state.timeslot, topo.edge(e).uid) < edge_p[static_cast<std::size_t>(e)]) {
                state.live[static_cast<std::size_t>(e)] = 1;
                new_edges.push_back(e);
            }
        }
        if (trace) (*trace)(state.timeslot, new_edges);

        if (is_single_path(kind)) {
            route_pending -= new_edges.size();
            if (route_pending == 0) {
                ProtocolOutcome out;
                out.timeslots = state.timeslot;
                out.solution = *precomputed;
                out.used_repeaters = detail::non_user_nodes(out.solution.used_nodes, users);
                return out;
            }
            continue;
        }

        for (int e : new_edges) {
            int ra = find(topo.edge(e).a), rb = find(topo.edge(e).b);
            if (ra != rb) dsu[static_cast<std::size_t>(ra)] = rb;
        }
        if (!users_connected()) continue;

        if (kind == ProtocolKind::MPT) {
            auto tree = best_steiner(GraphView(topo, state.live), users);
            ProtocolOutcome out;
            out.timeslots = state.timeslot;
            out.solution = make_tree_routing_solution(topo, std::move(tree));
            out.used_repeaters = detail::non_user_nodes(out.solution.used_nodes, users);
            return out;
        }
        auto star = select_centre(GraphView(topo, state.live), users);
        if (star) {
            ProtocolOutcome out;
            out.timeslots = state.timeslot;
            out.solution = make_star_routing_solution(topo, std::move(*star));
            out.used_repeaters = detail::non_user_nodes(out.solution.used_nodes, users);
            return out;
        }
    }
    throw TimeslotLimitError("protocol " + to_string(kind) + " exceeded " +
                             std::to_string(max_timeslots) + " timeslots");
}

inline ProtocolOutcome run_protocol(ProtocolKind kind, const NetworkTopology& topo,
                                    const UserSet& users, const LinkModel& model,
                                    std::uint64_t seed, std::uint64_t max_timeslots = 1000000,
                                    const SlotTraceSink* trace = nullptr) {
    if (is_single_path(kind)) {
        RoutingSolution route = precompute_route(kind, topo, users);
        return run_protocol_with_route(kind, topo, users, model, seed, max_timeslots, &route,
                                       trace);
    }
    if (kind == ProtocolKind::MPS && !star_feasible(topo, users))
        throw InfeasibleError("no valid centre-node admits disjoint paths to all users");
    return run_protocol_with_route(kind, topo, users, model, seed, max_timeslots, nullptr, trace);
}

} // namespace ghznet
