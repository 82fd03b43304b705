#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "footrule/coefficients.hpp"
#include "footrule/sample.hpp"

namespace footrule {

/// sum_i |i - (n - i + 1)| = floor(n^2 / 2), the footrule of a full reversal.
std::int64_t max_footrule(std::int64_t n);

/// Exact minimum of the footrule over all imputations.
std::int64_t lower_bound_case1(const PairedSample& sample);  // missing on one side only
std::int64_t lower_bound_case2(const PairedSample& sample);  // no doubly missing pair
std::int64_t lower_bound(const PairedSample& sample);        // any pattern

/// Exact maximum of the footrule over all imputations.
std::int64_t upper_bound_case1(const PairedSample& sample);
std::int64_t upper_bound_case2(const PairedSample& sample);
std::int64_t upper_bound_case3(const PairedSample& sample);  // only doubly missing pairs
std::int64_t upper_bound_general(const PairedSample& sample);

FootruleBounds bounds(const PairedSample& sample);

/// Footrule of the r-th extremal candidate under a one-sided missing pattern:
/// r missing components placed below all observed values, the rest above,
/// ordered inversely to their partners. 0 <= r <= number of missing entries.
std::int64_t candidate_value_case1(const PairedSample& sample, std::int64_t r);

/// Dense table of S_r = #{ i : z[i] <= r } for r in [lo, hi].
class CumulativeCounts {
public:
    CumulativeCounts(std::span<const std::int64_t> z, std::int64_t lo, std::int64_t hi);

    std::int64_t at(std::int64_t r) const;  // r must lie in [lo, hi]
    std::int64_t lo() const noexcept { return lo_; }
    std::int64_t hi() const noexcept { return hi_; }

private:
    std::int64_t lo_;
    std::int64_t hi_;
    std::vector<std::int64_t> s_;
};

namespace detail {

/// Relabeled instance shared by the upper-bound scans: ranks of observed
/// values plus the sorted partner ranks of the singly missing index sets.
struct ScanSetup {
    std::int64_t n = 0;
    std::int64_t m1 = 0;  // |U|: x missing, y observed
    std::int64_t m2 = 0;  // |V|: y missing, x observed
    std::int64_t m3 = 0;  // |W|: both missing
    std::vector<std::int64_t> a;  // x-ranks (among observed x) of V, ascending
    std::vector<std::int64_t> b;  // y-ranks (among observed y) of U, ascending
    std::vector<std::int64_t> d;  // y-rank minus x-rank per complete pair
};

ScanSetup make_scan_setup(const PairedSample& sample, bool swap_xy);

/// Closed-form footrule of the (r1, r2, r3) extremal candidate.
std::int64_t scan_candidate(const ScanSetup& s, std::int64_t r1, std::int64_t r2, std::int64_t r3);

struct SweepResult {
    std::int64_t best = 0;
    std::uint64_t cells = 0;  // candidate grid cells evaluated
};

SweepResult case1_sweep(const ScanSetup& s);    // m2 = m3 = 0
SweepResult case2_sweep(const ScanSetup& s);    // m3 = 0, m1 >= 1, m2 >= 1
SweepResult case3_sweep(const ScanSetup& s);    // m1 = m2 = 0, 1 <= m3 < n
SweepResult general_sweep(const ScanSetup& s);  // any pattern

/// Case-I scan values D_0..D_m1 (missing side relabeled to x).
std::vector<std::int64_t> case1_scan_values(const PairedSample& sample);

}  // namespace detail

}  // namespace footrule
