#pragma once

#include <cmath>
#include <vector>

#include <json.hpp>

#include "ghznet/flow.hpp"
#include "ghznet/shortest_paths.hpp"
#include "ghznet/topology.hpp"

namespace ghznet {

// Graph attribute report. Eccentricity quantities (diameter, radius, mean
// shortest path) use km distances; efficiency and closeness use hop counts.
struct MetricsReport {
    int node_count = 0;
    int edge_count = 0;
    double mean_edge_length = 0.0;
    double diameter = 0.0;
    double radius = 0.0;
    double mean_shortest_path_length = 0.0;
    double edge_length_std_dev = 0.0; // population
    double density = 0.0;
    double mean_global_efficiency = 0.0;
    double mean_laplacian_centrality = 0.0;
    double mean_closeness_centrality = 0.0;
    int node_connectivity = 0;
    double mean_node_degree = 0.0;
};

namespace detail {

// Laplacian energy of the unweighted graph: sum of squared Laplacian
// eigenvalues = sum of deg^2 + 2|E|.
inline double laplacian_energy(const std::vector<int>& degrees, int edge_count) {
    double e = 0.0;
    for (int d : degrees) e += static_cast<double>(d) * static_cast<double>(d);
    return e + 2.0 * static_cast<double>(edge_count);
}

} // namespace detail

inline MetricsReport compute_metrics(const NetworkTopology& topo) {
    MetricsReport r;
    const int n = topo.node_count();
    const int m = topo.edge_count();
    r.node_count = n;
    r.edge_count = m;

    double len_sum = 0.0;
    for (const auto& e : topo.edges()) len_sum += e.length_km;
    r.mean_edge_length = m > 0 ? len_sum / m : 0.0;
    double len_var = 0.0;
    for (const auto& e : topo.edges()) {
        double d = e.length_km - r.mean_edge_length;
        len_var += d * d;
    }
    r.edge_length_std_dev = m > 0 ? std::sqrt(len_var / m) : 0.0;

    auto km = all_pairs_shortest_paths(topo);
    double ecc_max = 0.0, ecc_min = kInfDistance, pair_sum = 0.0;
    for (int u = 0; u < n; ++u) {
        double ecc = 0.0;
        for (int v = 0; v < n; ++v) {
            ecc = std::max(ecc, km.at(u, v));
            if (v > u) pair_sum += km.at(u, v);
        }
        ecc_max = std::max(ecc_max, ecc);
        ecc_min = std::min(ecc_min, ecc);
    }
    r.diameter = ecc_max;
    r.radius = n > 0 ? ecc_min : 0.0;
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    r.mean_shortest_path_length = pairs > 0 ? pair_sum / pairs : 0.0;

    r.density = n > 1 ? 2.0 * m / (static_cast<double>(n) * (n - 1)) : 0.0;
    r.mean_node_degree = n > 0 ? 2.0 * m / n : 0.0;

    auto hops = all_pairs_hop_counts(topo);
    double eff_sum = 0.0, closeness_sum = 0.0;
    for (int u = 0; u < n; ++u) {
        double hop_sum = 0.0;
        for (int v = 0; v < n; ++v) {
            if (u == v) continue;
            eff_sum += 1.0 / hops.at(u, v);
            hop_sum += hops.at(u, v);
        }
        if (hop_sum > 0.0) closeness_sum += static_cast<double>(n - 1) / hop_sum;
    }
    r.mean_global_efficiency = n > 1 ? eff_sum / (static_cast<double>(n) * (n - 1)) : 0.0;
    r.mean_closeness_centrality = n > 0 ? closeness_sum / n : 0.0;

    // Laplacian centrality of v: relative drop in Laplacian energy when v is
    // removed, normalized per node to [0, 1]; averaged over nodes.
    std::vector<int> degrees(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) degrees[static_cast<std::size_t>(v)] = topo.degree(v);
    const double energy = detail::laplacian_energy(degrees, m);
    double lap_sum = 0.0;
    for (int v = 0; v < n; ++v) {
        double removed = energy;
        // node v's own term
        removed -= static_cast<double>(topo.degree(v)) * topo.degree(v);
        // neighbors lose one degree each; edge count drops by deg(v)
        for (const auto& adj : topo.adjacent(v)) {
            int d = degrees[static_cast<std::size_t>(adj.node)];
            removed -= static_cast<double>(d) * d - static_cast<double>(d - 1) * (d - 1);
        }
        removed -= 2.0 * topo.degree(v);
        lap_sum += (energy - removed) / energy;
    }
    r.mean_laplacian_centrality = n > 0 ? lap_sum / n : 0.0;

    r.node_connectivity = vertex_connectivity(topo);
    return r;
}

inline nlohmann::json metrics_to_json(const MetricsReport& r) {
    return nlohmann::json{{"node-count", r.node_count},
                          {"edge-count", r.edge_count},
                          {"mean-edge-length", r.mean_edge_length},
                          {"diameter", r.diameter},
                          {"radius", r.radius},
                          {"mean-shortest-path-length", r.mean_shortest_path_length},
                          {"edge-length-std-dev", r.edge_length_std_dev},
                          {"density", r.density},
                          {"mean-global-efficiency", r.mean_global_efficiency},
                          {"mean-laplacian-centrality", r.mean_laplacian_centrality},
                          {"mean-closeness-centrality", r.mean_closeness_centrality},
                          {"node-connectivity", r.node_connectivity},
                          {"mean-node-degree", r.mean_node_degree}};
}

} // namespace ghznet
