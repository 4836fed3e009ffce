#pragma once

#include <cmath>

#include "ghznet/common.hpp"

namespace ghznet {

// Entanglement-link success model: fiber transmission loss at a fixed dB/km
// attenuation, times an operational success factor.
struct LinkModel {
    double attenuation_db_per_km = 0.2;
    double p_op = 1.0;

    LinkModel() = default;
    LinkModel(double attenuation, double op) : attenuation_db_per_km(attenuation), p_op(op) {
        if (attenuation_db_per_km < 0.0) throw Error("attenuation must be non-negative");
        if (!(p_op > 0.0) || p_op > 1.0) throw Error("p_op must lie in (0, 1]");
    }
};

// p_tr(L) = 10^(-attenuation * L / 10)
inline double transmission_probability(const LinkModel& m, double length_km) {
    if (length_km < 0.0) throw Error("fiber length must be non-negative");
    return std::pow(10.0, -m.attenuation_db_per_km * length_km / 10.0);
}

// p_e(L) = p_tr(L) * p_op
inline double link_success_probability(const LinkModel& m, double length_km) {
    return transmission_probability(m, length_km) * m.p_op;
}

} // namespace ghznet
