#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ghznet/protocols.hpp"

namespace ghznet {

struct SimulationConfig {
    int iterations = 5000;
    std::uint64_t master_seed = 0;
    std::uint64_t max_timeslots = 1000000;
    int threads = 0; // 0 = hardware concurrency
};

// Aggregate over independent runs. Usage maps every node id to the fraction
// of runs whose routing solution used it; users are recorded as 1 by
// convention (they are part of every solution but are never trimmable).
struct SimulationSummary {
    std::string topology;
    std::string protocol;
    int iterations = 0;
    std::uint64_t master_seed = 0;
    double expected_timeslots = 0.0;
    double rate = 0.0;      // 1 / expected_timeslots
    double std_error = 0.0; // standard error of the mean of T
    std::vector<std::uint64_t> samples;
    std::map<std::string, double> usage;
};

// Seed for iteration i, reproducible in isolation.
inline std::uint64_t iteration_seed(std::uint64_t master_seed, int iteration) {
    return hash_combine(master_seed, static_cast<std::uint64_t>(iteration));
}

inline SimulationSummary run_simulation(const NetworkTopology& topo, const UserSet& users,
                                        ProtocolKind kind, const LinkModel& model,
                                        const SimulationConfig& cfg) {
    if (cfg.iterations < 1) throw Error("simulation needs at least one iteration");

    // Feasibility and the SP route are resolved once, ahead of the iterations.
    RoutingSolution sp_route;
    const RoutingSolution* route = nullptr;
    if (is_single_path(kind)) {
        sp_route = precompute_route(kind, topo, users);
        route = &sp_route;
    } else if (kind == ProtocolKind::MPS && !star_feasible(topo, users)) {
        throw InfeasibleError("no valid centre-node admits disjoint paths to all users");
    }

    const auto n = static_cast<std::size_t>(cfg.iterations);
    std::vector<std::uint64_t> samples(n, 0);
    unsigned hw = std::thread::hardware_concurrency();
    int workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(hw ? hw : 1);
    workers = std::min<int>(workers, cfg.iterations);

    // Per-worker usage counts merge commutatively, so the aggregate is
    // independent of scheduling.
    std::vector<std::vector<std::uint32_t>> usage_counts(
        static_cast<std::size_t>(workers),
        std::vector<std::uint32_t>(static_cast<std::size_t>(topo.node_count()), 0));
    std::vector<std::string> failures(static_cast<std::size_t>(workers));

    auto work = [&](int w) {
        try {
            for (int i = w; i < cfg.iterations; i += workers) {
                auto outcome =
                    run_protocol_with_route(kind, topo, users, model,
                                            iteration_seed(cfg.master_seed, i),
                                            cfg.max_timeslots, route);
                samples[static_cast<std::size_t>(i)] = outcome.timeslots;
                for (int v : outcome.used_repeaters)
                    usage_counts[static_cast<std::size_t>(w)][static_cast<std::size_t>(v)]++;
            }
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(w)] = e.what();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& f : failures)
        if (!f.empty()) throw TimeslotLimitError("simulation aborted: " + f);

    SimulationSummary s;
    s.topology = topo.name();
    s.protocol = to_string(kind);
    s.iterations = cfg.iterations;
    s.master_seed = cfg.master_seed;
    s.samples = std::move(samples);

    double sum = 0.0;
    for (auto t : s.samples) sum += static_cast<double>(t);
    s.expected_timeslots = sum / static_cast<double>(cfg.iterations);
    s.rate = 1.0 / s.expected_timeslots;
    if (cfg.iterations > 1) {
        double ss = 0.0;
        for (auto t : s.samples) {
            double d = static_cast<double>(t) - s.expected_timeslots;
            ss += d * d;
        }
        s.std_error = std::sqrt(ss / static_cast<double>(cfg.iterations - 1)) /
                      std::sqrt(static_cast<double>(cfg.iterations));
    }

    for (int v = 0; v < topo.node_count(); ++v) {
        std::uint64_t c = 0;
        for (const auto& uc : usage_counts) c += uc[static_cast<std::size_t>(v)];
        if (users.contains_index(v))
            s.usage[topo.node(v).id] = 1.0;
        else
            s.usage[topo.node(v).id] =
                static_cast<double>(c) / static_cast<double>(cfg.iterations);
    }
    return s;
}

// Closed-form waiting time for a fixed single-path route: the route is
// complete at the first slot by which every edge has succeeded at least once,
// so E[T] = sum over t >= 0 of P(T > t) with
// P(T > t) = 1 - prod_e (1 - (1 - p_e)^t).
inline double sp_expected_timeslots_exact(const std::vector<double>& edge_probs,
                                          double tail_tolerance = 1e-12) {
    if (edge_probs.empty()) return 0.0;
    std::vector<double> fail;
    fail.reserve(edge_probs.size());
    for (double p : edge_probs) {
        if (!(p > 0.0) || p > 1.0)
            throw Error("route edge probability must lie in (0, 1]");
        fail.push_back(1.0 - p);
    }
    double expected = 0.0;
    std::vector<double> fail_pow(fail.size(), 1.0); // (1-p)^t
    for (std::uint64_t t = 0;; ++t) {
        double log_all_done = 0.0;
        for (double fp : fail_pow) log_all_done += std::log1p(-fp);
        double term = -std::expm1(log_all_done); // 1 - prod(1 - (1-p)^t)
        expected += term;
        if (term < tail_tolerance) break;
        for (std::size_t i = 0; i < fail.size(); ++i) fail_pow[i] *= fail[i];
    }
    return expected;
}

// Convenience overload: probabilities taken from a routing solution's edges.
inline double sp_expected_timeslots_exact(const NetworkTopology& topo,
                                          const RoutingSolution& route, const LinkModel& m) {
    std::vector<double> probs;
    probs.reserve(route.used_edges.size());
    for (int e : route.used_edges)
        probs.push_back(link_success_probability(m, topo.edge(e).length_km));
    return sp_expected_timeslots_exact(probs);
}

inline nlohmann::json summary_to_json(const SimulationSummary& s) {
    nlohmann::json usage = nlohmann::json::object();
    for (const auto& [id, frac] : s.usage) usage[id] = frac;
    return nlohmann::json{{"topology", s.topology},
                          {"protocol", s.protocol},
                          {"iterations", s.iterations},
                          {"master_seed", s.master_seed},
                          {"expected_timeslots", s.expected_timeslots},
                          {"rate", s.rate},
                          {"std_error", s.std_error},
                          {"usage", usage}};
}

inline SimulationSummary summary_from_json(const nlohmann::json& j) {
    SimulationSummary s;
    s.topology = j.at("topology").get<std::string>();
    s.protocol = j.at("protocol").get<std::string>();
    s.iterations = j.at("iterations").get<int>();
    s.master_seed = j.at("master_seed").get<std::uint64_t>();
    s.expected_timeslots = j.at("expected_timeslots").get<double>();
    s.rate = j.at("rate").get<double>();
    s.std_error = j.at("std_error").get<double>();
    for (const auto& [id, frac] : j.at("usage").items()) s.usage[id] = frac.get<double>();
    return s;
}

} // namespace ghznet
