#include "footrule/coefficients.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace footrule {

namespace {

void check_lengths(const RankVector& rx, const RankVector& ry) {
    if (rx.size() != ry.size()) {
        raise(errc::length_mismatch, "rank vectors must have the same length");
    }
    if (rx.empty()) {
        raise(errc::invalid_argument, "rank vectors must be nonempty");
    }
}

void check_dimension(std::int64_t n) {
    if (n < 2) {
        raise(errc::bad_dimension, "scaling requires n >= 2");
    }
}

// Number of inversions in seq, counted by merge sort.
std::int64_t count_inversions(std::vector<Rank>& seq, std::vector<Rank>& scratch,
                              std::size_t lo, std::size_t hi) {
    if (hi - lo <= 1) return 0;
    std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t inv = count_inversions(seq, scratch, lo, mid) +
                       count_inversions(seq, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (seq[i] <= seq[j]) {
            scratch[k++] = seq[i++];
        } else {
            inv += static_cast<std::int64_t>(mid - i);
            scratch[k++] = seq[j++];
        }
    }
    while (i < mid) scratch[k++] = seq[i++];
    while (j < hi) scratch[k++] = seq[j++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              seq.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

}  // namespace

std::int64_t footrule_distance(const RankVector& rx, const RankVector& ry) {
    check_lengths(rx, ry);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        total += std::llabs(rx[i] - ry[i]);
    }
    return total;
}

std::int64_t spearman_rho_raw(const RankVector& rx, const RankVector& ry) {
    check_lengths(rx, ry);
    std::int64_t total = 0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        std::int64_t diff = rx[i] - ry[i];
        total += diff * diff;
    }
    return total;
}

std::int64_t kendall_tau_raw(const RankVector& rx, const RankVector& ry) {
    check_lengths(rx, ry);
    std::size_t n = rx.size();
    // Discordant pairs = inversions of ry read in increasing-rx order.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t lhs, std::size_t rhs) { return rx[lhs] < rx[rhs]; });
    std::vector<Rank> seq(n);
    for (std::size_t k = 0; k < n; ++k) seq[k] = ry[order[k]];
    std::vector<Rank> scratch(n);
    return count_inversions(seq, scratch, 0, n);
}

double scale_footrule(std::int64_t d, std::int64_t n) {
    check_dimension(n);
    return 1.0 - 3.0 * static_cast<double>(d) / (static_cast<double>(n) * n - 1.0);
}

double scale_rho(std::int64_t rho_raw, std::int64_t n) {
    check_dimension(n);
    double nn = static_cast<double>(n);
    return 1.0 - 6.0 * static_cast<double>(rho_raw) / (nn * (nn * nn - 1.0));
}

double scale_tau(std::int64_t tau_raw, std::int64_t n) {
    check_dimension(n);
    double nn = static_cast<double>(n);
    return 1.0 - 4.0 * static_cast<double>(tau_raw) / (nn * (nn - 1.0));
}

TauBounds tau_bounds(const FootruleBounds& fb, std::int64_t n) {
    TauBounds out;
    out.tau_min = static_cast<double>(fb.d_min) / 2.0;
    double pair_count = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    out.tau_max = std::min(static_cast<double>(fb.d_max), pair_count);
    return out;
}

CoefficientSet coefficient_set(const RankVector& rx, const RankVector& ry) {
    CoefficientSet out;
    auto n = static_cast<std::int64_t>(rx.size());
    out.footrule = footrule_distance(rx, ry);
    out.rho_raw = spearman_rho_raw(rx, ry);
    out.tau_raw = kendall_tau_raw(rx, ry);
    out.footrule_scaled = scale_footrule(out.footrule, n);
    out.rho_scaled = scale_rho(out.rho_raw, n);
    out.tau_scaled = scale_tau(out.tau_raw, n);
    return out;
}

}  // namespace footrule
