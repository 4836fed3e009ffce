#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ghznet/common.hpp"
#include "ghznet/protocols.hpp"

namespace ghznet {

inline constexpr std::array<ProtocolKind, 4> kAllProtocols = {
    ProtocolKind::SPS, ProtocolKind::SPT, ProtocolKind::MPS, ProtocolKind::MPT};

// Rows are topologies, columns the four protocols' E[T]. The standardized
// copy carries per-column population z-scores; a zero-variance column
// standardizes to zeros.
struct FeatureMatrix {
    std::vector<std::string> names;
    std::vector<std::array<double, 4>> raw;
    std::vector<std::array<double, 4>> standardized;
    std::size_t rows() const { return names.size(); }
};

inline FeatureMatrix
build_features(const std::map<std::string, std::map<std::string, double>>& expected_timeslots) {
    FeatureMatrix f;
    for (const auto& [name, per_protocol] : expected_timeslots) {
        std::array<double, 4> row{};
        for (std::size_t c = 0; c < 4; ++c) {
            auto it = per_protocol.find(to_string(kAllProtocols[c]));
            if (it == per_protocol.end())
                throw AnalysisError("topology '" + name + "' is missing protocol '" +
                                    to_string(kAllProtocols[c]) + "'");
            row[c] = it->second;
        }
        f.names.push_back(name);
        f.raw.push_back(row);
    }
    if (f.raw.empty()) throw AnalysisError("no feature rows");

    const double n = static_cast<double>(f.rows());
    f.standardized.assign(f.rows(), {});
    for (std::size_t c = 0; c < 4; ++c) {
        double mean = 0.0;
        for (const auto& row : f.raw) mean += row[c];
        mean /= n;
        double var = 0.0;
        for (const auto& row : f.raw) var += (row[c] - mean) * (row[c] - mean);
        var /= n; // population variance
        double sd = std::sqrt(var);
        for (std::size_t r = 0; r < f.rows(); ++r)
            f.standardized[r][c] = sd > 0.0 ? (f.raw[r][c] - mean) / sd : 0.0;
    }
    return f;
}

struct ClusterAssignment {
    int k = 0;
    std::vector<int> labels;                     // per row, in [0, k)
    std::vector<std::array<double, 4>> centroids; // standardized space
    double inertia = 0.0;                        // within-cluster sum of squares
    double silhouette = 0.0;                     // filled by the caller for k >= 2
};

namespace detail {

inline double sq_dist(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

// Deterministic uniform stream for k-means initialization.
class SeededStream {
public:
    explicit SeededStream(std::uint64_t seed) : state_(splitmix64(seed)) {}
    double next_unit() {
        state_ = splitmix64(state_);
        return unit_double(state_);
    }
    std::size_t next_index(std::size_t n) {
        return std::min<std::size_t>(static_cast<std::size_t>(next_unit() * static_cast<double>(n)),
                                     n - 1);
    }

private:
    std::uint64_t state_;
};

inline std::vector<std::array<double, 4>>
kmeanspp_init(const std::vector<std::array<double, 4>>& points, int k, SeededStream& rng) {
    std::vector<std::array<double, 4>> centroids;
    centroids.push_back(points[rng.next_index(points.size())]);
    std::vector<double> d2(points.size());
    while (static_cast<int>(centroids.size()) < k) {
        double total = 0.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) best = std::min(best, sq_dist(points[i], c));
            d2[i] = best;
            total += best;
        }
        std::size_t chosen = 0;
        if (total > 0.0) {
            double target = rng.next_unit() * total, acc = 0.0;
            for (std::size_t i = 0; i < points.size(); ++i) {
                acc += d2[i];
                if (acc >= target) {
                    chosen = i;
                    break;
                }
            }
        } else {
            chosen = rng.next_index(points.size());
        }
        centroids.push_back(points[chosen]);
    }
    return centroids;
}

inline std::pair<std::vector<int>, double>
assign(const std::vector<std::array<double, 4>>& points,
       const std::vector<std::array<double, 4>>& centroids) {
    std::vector<int> labels(points.size(), 0);
    double inertia = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            double d = sq_dist(points[i], centroids[c]);
            if (d < best) {
                best = d;
                labels[i] = static_cast<int>(c);
            }
        }
        inertia += best;
    }
    return {std::move(labels), inertia};
}

inline ClusterAssignment lloyd(const std::vector<std::array<double, 4>>& points, int k,
                               std::uint64_t seed) {
    SeededStream rng(seed);
    auto centroids = kmeanspp_init(points, k, rng);
    std::vector<int> labels;
    double inertia = 0.0;
    for (int iter = 0; iter < 300; ++iter) {
        auto [new_labels, new_inertia] = assign(points, centroids);
        // recompute centroids; an emptied cluster reseeds from the point
        // farthest from its current centroid (deterministic rule)
        std::vector<std::array<double, 4>> sums(static_cast<std::size_t>(k), {});
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            for (std::size_t d = 0; d < 4; ++d)
                sums[static_cast<std::size_t>(new_labels[i])][d] += points[i][d];
            counts[static_cast<std::size_t>(new_labels[i])]++;
        }
        for (int c = 0; c < k; ++c) {
            if (counts[static_cast<std::size_t>(c)] > 0) {
                for (std::size_t d = 0; d < 4; ++d)
                    centroids[static_cast<std::size_t>(c)][d] =
                        sums[static_cast<std::size_t>(c)][d] /
                        static_cast<double>(counts[static_cast<std::size_t>(c)]);
            } else {
                std::size_t farthest = 0;
                double best = -1.0;
                for (std::size_t i = 0; i < points.size(); ++i) {
                    double d = sq_dist(points[i],
                                       centroids[static_cast<std::size_t>(new_labels[i])]);
                    if (d > best) {
                        best = d;
                        farthest = i;
                    }
                }
                centroids[static_cast<std::size_t>(c)] = points[farthest];
            }
        }
        bool stable = labels == new_labels;
        labels = std::move(new_labels);
        inertia = new_inertia;
        if (stable) break;
    }
    auto [final_labels, final_inertia] = assign(points, centroids);
    ClusterAssignment a;
    a.k = k;
    a.labels = std::move(final_labels);
    a.centroids = std::move(centroids);
    a.inertia = final_inertia;
    (void)labels;
    (void)inertia;
    return a;
}

} // namespace detail

inline double silhouette_score(const FeatureMatrix& f, const std::vector<int>& labels, int k) {
    if (k < 2) throw AnalysisError("silhouette needs k >= 2");
    const auto n = f.rows();
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int l : labels) counts[static_cast<std::size_t>(l)]++;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        int li = labels[i];
        if (counts[static_cast<std::size_t>(li)] <= 1) continue; // singleton scores 0
        std::vector<double> mean_dist(static_cast<std::size_t>(k), 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            mean_dist[static_cast<std::size_t>(labels[j])] +=
                std::sqrt(detail::sq_dist(f.standardized[i], f.standardized[j]));
        }
        double a = mean_dist[static_cast<std::size_t>(li)] /
                   static_cast<double>(counts[static_cast<std::size_t>(li)] - 1);
        double b = std::numeric_limits<double>::infinity();
        for (int c = 0; c < k; ++c) {
            if (c == li || counts[static_cast<std::size_t>(c)] == 0) continue;
            b = std::min(b, mean_dist[static_cast<std::size_t>(c)] /
                                static_cast<double>(counts[static_cast<std::size_t>(c)]));
        }
        double denom = std::max(a, b);
        total += denom > 0.0 ? (b - a) / denom : 0.0;
    }
    return total / static_cast<double>(n);
}

// Lloyd iterations from k-means++ starts; the best of `restarts` by
// (inertia, restart index). Deterministic given the seed.
inline ClusterAssignment kmeans(const FeatureMatrix& f, int k, std::uint64_t seed,
                                int restarts = 50) {
    if (k < 1) throw AnalysisError("k must be positive");
    if (static_cast<std::size_t>(k) > f.rows())
        throw AnalysisError("k exceeds the number of topologies");
    ClusterAssignment best;
    bool have = false;
    for (int r = 0; r < restarts; ++r) {
        auto a = detail::lloyd(f.standardized, k, hash_combine(seed, static_cast<std::uint64_t>(r)));
        if (!have || a.inertia < best.inertia) {
            best = std::move(a);
            have = true;
        }
    }
    if (k >= 2) best.silhouette = silhouette_score(f, best.labels, k);
    return best;
}

inline std::map<int, double> elbow_curve(const FeatureMatrix& f, int k_min, int k_max,
                                         std::uint64_t seed, int restarts = 50) {
    if (k_min < 1 || static_cast<std::size_t>(k_max) > f.rows() || k_min > k_max)
        throw AnalysisError("invalid k range");
    std::map<int, double> out;
    for (int k = k_min; k <= k_max; ++k) out[k] = kmeans(f, k, seed, restarts).inertia;
    return out;
}

// Per-cluster, per-protocol performance flags relative to the overall mean of
// the raw E[T] column: below the mean is good, otherwise poor.
struct ClusterLabels {
    std::map<int, std::array<bool, 4>> good; // cluster -> per-protocol flag
    std::map<int, std::string> semantic;     // derived class name
};

inline ClusterLabels label_clusters(const ClusterAssignment& a, const FeatureMatrix& f) {
    std::array<double, 4> overall{};
    for (const auto& row : f.raw)
        for (std::size_t c = 0; c < 4; ++c) overall[c] += row[c];
    for (auto& v : overall) v /= static_cast<double>(f.rows());

    ClusterLabels out;
    for (int cluster = 0; cluster < a.k; ++cluster) {
        std::array<double, 4> mean{};
        int count = 0;
        for (std::size_t r = 0; r < f.rows(); ++r) {
            if (a.labels[r] != cluster) continue;
            for (std::size_t c = 0; c < 4; ++c) mean[c] += f.raw[r][c];
            ++count;
        }
        if (count == 0) continue;
        std::array<bool, 4> good{};
        for (std::size_t c = 0; c < 4; ++c) good[c] = mean[c] / count < overall[c];
        // column order: SPS, SPT, MPS, MPT
        std::string name = "mixed";
        if (good[0] && good[1] && good[2] && good[3]) name = "globally favourable";
        else if (!good[0] && !good[1] && !good[2] && !good[3]) name = "globally adverse";
        else if (!good[0] && good[1] && !good[2] && good[3]) name = "tree dominant";
        else if (!good[0] && !good[1] && good[2] && good[3]) name = "multi-path dominant";
        out.good[cluster] = good;
        out.semantic[cluster] = name;
    }
    return out;
}

inline nlohmann::json cluster_labels_to_json(const ClusterLabels& labels) {
    nlohmann::json doc = nlohmann::json::object();
    for (const auto& [cluster, good] : labels.good) {
        nlohmann::json flags = nlohmann::json::object();
        for (std::size_t c = 0; c < 4; ++c)
            flags[to_string(kAllProtocols[c])] = good[c] ? "good" : "poor";
        doc[std::to_string(cluster)] = {{"flags", flags},
                                        {"class", labels.semantic.at(cluster)}};
    }
    return doc;
}

} // namespace ghznet
