#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ghznet/montecarlo.hpp"

namespace ghznet {

struct TrimStep {
    std::vector<std::string> removed;      // node ids removed this step, sorted
    int remaining_active = 0;              // non-user nodes left after the removal
    double rate = 0.0;                     // lambda after this step's re-simulation
    double rate_std_error = 0.0;           // delta-method SE of lambda
    std::map<std::string, double> usage;   // post-trim usage map
};

struct TrimTrace {
    double baseline_rate = 0.0;
    double baseline_rate_std_error = 0.0;
    int baseline_active_count = 0; // active repeaters after the redundant pass
    std::vector<TrimStep> steps;   // steps[0] is the redundant pass
};

// Non-user nodes that appeared in no routing solution across the runs.
inline std::vector<std::string> redundant_repeaters(const SimulationSummary& summary,
                                                    const UserSet& users) {
    std::vector<std::string> out;
    for (const auto& [id, frac] : summary.usage)
        if (frac == 0.0 && !users.contains_id(id)) out.push_back(id);
    return out;
}

namespace detail {

inline bool protocol_feasible(const NetworkTopology& topo, const UserSet& users,
                              ProtocolKind kind) {
    for (const auto& id : users.ids())
        if (!topo.has_node(id)) return false;
    std::vector<int> idx;
    idx.reserve(users.size());
    for (const auto& id : users.ids()) idx.push_back(topo.index_of(id));
    if (!topo.nodes_connected(idx)) return false;
    if (is_star_based(kind)) {
        UserSet u(topo, users.ids());
        return star_feasible(topo, u);
    }
    return true;
}

inline double rate_std_error(const SimulationSummary& s) {
    // lambda = 1/E[T]; first-order propagation of the SE of the mean
    return s.std_error / (s.expected_timeslots * s.expected_timeslots);
}

} // namespace detail

// One trimming step: remove the non-user nodes tied at the lowest usage below
// 1.0, skipping any node whose removal would disconnect the users or destroy
// protocol feasibility. If the whole lowest tier is blocked, the next-lowest
// tier is considered. Returns the trimmed topology and the removed ids (empty
// when nothing is removable).
inline std::pair<NetworkTopology, std::vector<std::string>>
trim_step(const NetworkTopology& topo, const std::map<std::string, double>& usage,
          const UserSet& users, ProtocolKind kind) {
    std::map<double, std::vector<std::string>> tiers; // usage -> candidate ids (sorted)
    for (const auto& n : topo.nodes()) {
        if (users.contains_id(n.id)) continue;
        auto it = usage.find(n.id);
        double frac = it == usage.end() ? 0.0 : it->second;
        if (frac < 1.0) tiers[frac].push_back(n.id);
    }
    for (auto& [frac, ids] : tiers) {
        NetworkTopology current = topo;
        std::vector<std::string> removed;
        for (const auto& id : ids) {
            NetworkTopology attempt = current.without_nodes({id});
            if (!detail::protocol_feasible(attempt, users, kind)) continue;
            current = std::move(attempt);
            removed.push_back(id);
        }
        if (!removed.empty()) return {std::move(current), std::move(removed)};
    }
    return {topo, {}};
}

// Full trimming pipeline: a redundant pass (no re-simulation; removing nodes
// that appear in no solution cannot change any outcome), then repeated
// trim_step + re-simulation until every remaining repeater is always used or
// nothing further is removable.
inline TrimTrace run_trimming(const NetworkTopology& topo, const UserSet& users,
                              ProtocolKind kind, const LinkModel& model,
                              const SimulationConfig& cfg) {
    if (is_single_path(kind))
        throw Error("trimming applies to multi-path protocols; single-path trimming is a single "
                    "pass removing all off-route repeaters");

    TrimTrace trace;
    SimulationSummary baseline = run_simulation(topo, users, kind, model, cfg);
    trace.baseline_rate = baseline.rate;
    trace.baseline_rate_std_error = detail::rate_std_error(baseline);

    std::vector<std::string> redundant = redundant_repeaters(baseline, users);
    int non_user_total = topo.node_count() - static_cast<int>(users.size());
    trace.baseline_active_count = non_user_total - static_cast<int>(redundant.size());

    NetworkTopology current =
        topo.without_nodes(std::set<std::string>(redundant.begin(), redundant.end()));
    std::map<std::string, double> usage;
    for (const auto& [id, frac] : baseline.usage)
        if (current.has_node(id)) usage[id] = frac;

    TrimStep first;
    first.removed = redundant;
    first.remaining_active = trace.baseline_active_count;
    first.rate = baseline.rate;
    first.rate_std_error = trace.baseline_rate_std_error;
    first.usage = usage;
    trace.steps.push_back(std::move(first));

    while (true) {
        bool all_always_used = true;
        for (const auto& n : current.nodes()) {
            if (users.contains_id(n.id)) continue;
            if (usage.at(n.id) < 1.0) {
                all_always_used = false;
                break;
            }
        }
        if (all_always_used) break;

        auto [trimmed, removed] = trim_step(current, usage, users, kind);
        if (removed.empty()) break;

        UserSet trimmed_users(trimmed, users.ids());
        SimulationSummary summary = run_simulation(trimmed, trimmed_users, kind, model, cfg);

        TrimStep step;
        step.removed = removed;
        step.remaining_active = trimmed.node_count() - static_cast<int>(users.size());
        step.rate = summary.rate;
        step.rate_std_error = detail::rate_std_error(summary);
        step.usage = summary.usage;
        trace.steps.push_back(step);

        current = std::move(trimmed);
        usage = std::move(step.usage);
    }
    return trace;
}

// Fraction of baseline active repeaters removed by the last effective step
// still holding lambda / lambda0 >= threshold. The redundant pass contributes
// to neither numerator nor denominator.
inline double trimmable_fraction(const TrimTrace& trace, double threshold) {
    if (trace.steps.empty()) throw Error("empty trim trace");
    if (trace.baseline_active_count == 0) return 0.0;
    std::size_t cumulative = 0, best = 0;
    for (std::size_t i = 1; i < trace.steps.size(); ++i) {
        cumulative += trace.steps[i].removed.size();
        if (trace.steps[i].rate / trace.baseline_rate >= threshold) best = cumulative;
    }
    return static_cast<double>(best) / static_cast<double>(trace.baseline_active_count);
}

} // namespace ghznet
