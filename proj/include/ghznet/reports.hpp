#pragma once

#include <ostream>
#include <string>

#include "ghznet/analysis.hpp"
#include "ghznet/montecarlo.hpp"
#include "ghznet/trimming.hpp"

namespace ghznet {

// Plain-CSV emitters for the artifacts the pipeline writes. Numbers use the
// shortest round-trip representation so identical data yields identical
// bytes.

inline void write_samples_csv(std::ostream& out, const SimulationSummary& s) {
    out << "iteration,timeslots\n";
    for (std::size_t i = 0; i < s.samples.size(); ++i)
        out << i << ',' << s.samples[i] << '\n';
}

inline void write_usage_csv(std::ostream& out, const std::map<std::string, double>& usage) {
    out << "node_id,usage_fraction\n";
    for (const auto& [id, frac] : usage) out << id << ',' << format_double(frac) << '\n';
}

inline void write_trim_trace_csv(std::ostream& out, const TrimTrace& trace) {
    out << "step,removed_nodes,remaining_active,lambda,lambda_over_lambda0\n";
    for (std::size_t i = 0; i < trace.steps.size(); ++i) {
        const auto& step = trace.steps[i];
        out << i << ',';
        for (std::size_t j = 0; j < step.removed.size(); ++j) {
            if (j) out << ';';
            out << step.removed[j];
        }
        out << ',' << step.remaining_active << ',' << format_double(step.rate) << ','
            << format_double(step.rate / trace.baseline_rate) << '\n';
    }
}

inline void write_trimmable_csv(std::ostream& out, const TrimTrace& trace,
                                const std::vector<double>& thresholds) {
    out << "threshold,trimmable_fraction\n";
    for (double t : thresholds)
        out << format_double(t) << ',' << format_double(trimmable_fraction(trace, t)) << '\n';
}

inline void write_features_csv(std::ostream& out, const FeatureMatrix& f) {
    out << "topology,sps,spt,mps,mpt\n";
    for (std::size_t r = 0; r < f.rows(); ++r) {
        out << f.names[r];
        for (std::size_t c = 0; c < 4; ++c) out << ',' << format_double(f.raw[r][c]);
        out << '\n';
    }
}

inline void write_clusters_csv(std::ostream& out, const FeatureMatrix& f,
                               const ClusterAssignment& a) {
    out << "topology,cluster\n";
    for (std::size_t r = 0; r < f.rows(); ++r) out << f.names[r] << ',' << a.labels[r] << '\n';
}

inline nlohmann::json cluster_diagnostics_to_json(const ClusterAssignment& a,
                                                  const std::map<int, double>& elbow) {
    nlohmann::json centroids = nlohmann::json::array();
    for (const auto& c : a.centroids) centroids.push_back({c[0], c[1], c[2], c[3]});
    nlohmann::json elbow_json = nlohmann::json::object();
    for (const auto& [k, inertia] : elbow) elbow_json[std::to_string(k)] = inertia;
    return nlohmann::json{{"k", a.k},
                          {"centroids", centroids},
                          {"inertia", a.inertia},
                          {"silhouette", a.silhouette},
                          {"elbow", elbow_json}};
}

} // namespace ghznet
