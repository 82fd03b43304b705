#pragma once

#include <cstdint>

#include "footrule/sample.hpp"

namespace footrule {

struct FootruleBounds {
    std::int64_t d_min = 0;
    std::int64_t d_max = 0;
};

/// Kendall tau bounds on the raw discordance scale.
struct TauBounds {
    double tau_min = 0.0;
    double tau_max = 0.0;
};

struct CoefficientSet {
    std::int64_t footrule = 0;
    std::int64_t rho_raw = 0;
    std::int64_t tau_raw = 0;
    double footrule_scaled = 1.0;
    double rho_scaled = 1.0;
    double tau_scaled = 1.0;
};

/// sum_i |rx[i] - ry[i]|
std::int64_t footrule_distance(const RankVector& rx, const RankVector& ry);

/// sum_i (rx[i] - ry[i])^2
std::int64_t spearman_rho_raw(const RankVector& rx, const RankVector& ry);

/// Number of discordant index pairs; O(n log n) merge count.
std::int64_t kendall_tau_raw(const RankVector& rx, const RankVector& ry);

double scale_footrule(std::int64_t d, std::int64_t n);  // 1 - 3d/(n^2-1)
double scale_rho(std::int64_t rho_raw, std::int64_t n);  // 1 - 6rho/(n(n^2-1))
double scale_tau(std::int64_t tau_raw, std::int64_t n);  // 1 - 4tau/(n(n-1))

/// tau_min = d_min/2, tau_max = min(d_max, n(n-1)/2)
TauBounds tau_bounds(const FootruleBounds& fb, std::int64_t n);

CoefficientSet coefficient_set(const RankVector& rx, const RankVector& ry);

}  // namespace footrule
