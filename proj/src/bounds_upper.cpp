#include <algorithm>
#include <cassert>
#include <cstdlib>
#include <vector>

#include "footrule/bounds.hpp"

namespace footrule {

CumulativeCounts::CumulativeCounts(std::span<const std::int64_t> z, std::int64_t lo,
                                   std::int64_t hi)
    : lo_(lo), hi_(hi) {
    if (lo > hi) {
        raise(errc::bad_range, "cumulative count range must satisfy lo <= hi");
    }
    s_.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    for (std::int64_t v : z) {
        if (v <= lo) {
            ++s_[0];
        } else if (v <= hi) {
            ++s_[static_cast<std::size_t>(v - lo)];
        }
    }
    for (std::size_t k = 1; k < s_.size(); ++k) {
        s_[k] += s_[k - 1];
    }
}

std::int64_t CumulativeCounts::at(std::int64_t r) const {
    assert(r >= lo_ && r <= hi_);
    return s_[static_cast<std::size_t>(r - lo_)];
}

namespace detail {

namespace {

// Ranks among the observed entries of one coordinate; -1 where missing.
std::vector<Rank> column_ranks(const std::vector<std::optional<double>>& column) {
    std::vector<std::size_t> observed;
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i].has_value()) observed.push_back(i);
    }
    std::sort(observed.begin(), observed.end(),
              [&](std::size_t lhs, std::size_t rhs) { return *column[lhs] < *column[rhs]; });
    std::vector<Rank> ranks(column.size(), -1);
    for (std::size_t k = 0; k < observed.size(); ++k) {
        ranks[observed[k]] = static_cast<Rank>(k + 1);
    }
    return ranks;
}

// Rank of the r1-th extremal placement of the i-th (1-based, sorted by
// partner) singly missing component among the n_free non-doubly-missing
// slots: the m-r largest components sit on top, the rest at the bottom.
inline std::int64_t extremal_rank(std::int64_t i, std::int64_t m, std::int64_t r,
                                  std::int64_t n_free) {
    return i <= m - r ? n_free - i + 1 : m - i + 1;
}

}  // namespace

ScanSetup make_scan_setup(const PairedSample& sample, bool swap_xy) {
    const std::vector<std::optional<double>>& xs = swap_xy ? sample.y : sample.x;
    const std::vector<std::optional<double>>& ys = swap_xy ? sample.x : sample.y;
    std::vector<Rank> xr = column_ranks(xs);
    std::vector<Rank> yr = column_ranks(ys);

    ScanSetup s;
    s.n = static_cast<std::int64_t>(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        bool has_x = xr[i] >= 0;
        bool has_y = yr[i] >= 0;
        if (!has_x && has_y) {
            ++s.m1;
            s.b.push_back(yr[i]);
        } else if (has_x && !has_y) {
            ++s.m2;
            s.a.push_back(xr[i]);
        } else if (!has_x && !has_y) {
            ++s.m3;
        } else {
            s.d.push_back(yr[i] - xr[i]);
        }
    }
    std::sort(s.a.begin(), s.a.end());
    std::sort(s.b.begin(), s.b.end());
    return s;
}

std::int64_t scan_candidate(const ScanSetup& s, std::int64_t r1, std::int64_t r2,
                            std::int64_t r3) {
    if (r1 < 0 || r1 > s.m1 || r2 < 0 || r2 > s.m2 || r3 < 0 || r3 > s.m3) {
        raise(errc::bad_range, "candidate index out of range");
    }
    std::int64_t n_free = s.n - s.m3;
    std::int64_t total = 0;
    for (std::int64_t i = 1; i <= s.m2; ++i) {
        std::int64_t q = extremal_rank(i, s.m2, r2, n_free);
        total += std::llabs(s.a[static_cast<std::size_t>(i - 1)] + r1 - q + 2 * r3 - s.m3);
    }
    for (std::int64_t j = 1; j <= s.m1; ++j) {
        std::int64_t p = extremal_rank(j, s.m1, r1, n_free);
        total += std::llabs(p - s.b[static_cast<std::size_t>(j - 1)] - r2 + 2 * r3 - s.m3);
    }
    for (std::int64_t di : s.d) {
        total += std::llabs(r1 - r2 + 2 * r3 - s.m3 - di);
    }
    // Doubly missing pairs occupy opposite rank extremes with rank sums n+1.
    for (std::int64_t i = 1; i <= s.m3; ++i) {
        total += i <= s.m3 - r3 ? std::llabs(s.n + 1 - 2 * i)
                                : std::llabs(2 * s.m3 - 2 * i + 1 - s.n);
    }
    return total;
}

SweepResult case1_sweep(const ScanSetup& s) {
    SweepResult out{scan_candidate(s, 0, 0, 0), 1};
    if (s.m1 == 0) return out;
    std::int64_t value = out.best;
    CumulativeCounts counts(s.d, 0, s.m1 - 1);
    for (std::int64_t r = 0; r < s.m1; ++r) {
        std::int64_t partner = s.b[static_cast<std::size_t>(s.m1 - r - 1)];
        std::int64_t correction = std::llabs(r + 1 - partner) -
                                  std::llabs(s.n - s.m1 + r + 1 - partner);
        value += 2 * counts.at(r) - (s.n - s.m1) + correction;
        out.best = std::max(out.best, value);
        ++out.cells;
    }
    return out;
}

SweepResult case2_sweep(const ScanSetup& s) {
    assert(s.m3 == 0 && s.m1 >= 1 && s.m2 >= 1);
    std::int64_t n_rest = s.n - s.m1 - s.m2;
    CumulativeCounts counts_d(s.d, -s.m2 - 1, s.m1 - 1);

    // R-table at r1 = 0: z_j = b_j - p^(0)_j, queried at -r2 - 1.
    std::vector<std::int64_t> z_r(static_cast<std::size_t>(s.m1));
    for (std::int64_t j = 1; j <= s.m1; ++j) {
        z_r[static_cast<std::size_t>(j - 1)] = s.b[static_cast<std::size_t>(j - 1)] -
                                               (s.n - j + 1);
    }
    CumulativeCounts counts_r(z_r, -s.m2 - 1, -1);

    SweepResult out{scan_candidate(s, 0, 0, 0), 0};
    std::int64_t row_value = out.best;  // D at (r1 = 0, r2)
    std::vector<std::int64_t> z_sa(static_cast<std::size_t>(s.m2));
    for (std::int64_t r2 = 0; r2 <= s.m2; ++r2) {
        for (std::int64_t i = 1; i <= s.m2; ++i) {
            z_sa[static_cast<std::size_t>(i - 1)] =
                extremal_rank(i, s.m2, r2, s.n) - s.a[static_cast<std::size_t>(i - 1)];
        }
        CumulativeCounts counts_sa(z_sa, 0, s.m1);

        std::int64_t value = row_value;
        out.best = std::max(out.best, value);
        ++out.cells;
        for (std::int64_t r1 = 0; r1 < s.m1; ++r1) {
            std::int64_t partner = s.b[static_cast<std::size_t>(s.m1 - r1 - 1)] + r2;
            std::int64_t c1 = std::llabs(r1 + 1 - partner) -
                              std::llabs(s.n - s.m1 + r1 + 1 - partner);
            value += 2 * counts_sa.at(r1) - s.m2 + 2 * counts_d.at(r1 - r2) - n_rest + c1;
            out.best = std::max(out.best, value);
            ++out.cells;
        }
        if (r2 < s.m2) {
            std::int64_t partner = s.a[static_cast<std::size_t>(s.m2 - r2 - 1)];
            std::int64_t c2 = std::llabs(r2 + 1 - partner) -
                              std::llabs(s.n - s.m2 + r2 + 1 - partner);
            row_value += s.m1 - 2 * counts_r.at(-r2 - 1) + n_rest - 2 * counts_d.at(-r2 - 1) + c2;
        }
    }
    return out;
}

SweepResult case3_sweep(const ScanSetup& s) {
    assert(s.m1 == 0 && s.m2 == 0 && s.m3 >= 1 && s.m3 < s.n);
    SweepResult out{scan_candidate(s, 0, 0, 0), 1};
    std::int64_t value = out.best;
    CumulativeCounts counts(s.d, -s.m3, s.m3 - 1);
    for (std::int64_t r = 0; r < s.m3; ++r) {
        value += 2 * (counts.at(2 * r + 1 - s.m3) + counts.at(2 * r - s.m3) - (s.n - s.m3));
        value += std::llabs(2 * r + 1 - s.n) - std::llabs(s.n + 1 - 2 * (s.m3 - r));
        out.best = std::max(out.best, value);
        ++out.cells;
    }
    return out;
}

SweepResult general_sweep(const ScanSetup& s) {
    std::int64_t n_free = s.n - s.m3;
    std::int64_t n_rest = s.n - s.m1 - s.m2 - s.m3;
    CumulativeCounts counts_d(s.d, -s.m2 - s.m3 - 1, s.m1 + s.m3);

    std::vector<std::int64_t> z_r(static_cast<std::size_t>(s.m1));
    for (std::int64_t j = 1; j <= s.m1; ++j) {
        z_r[static_cast<std::size_t>(j - 1)] = s.b[static_cast<std::size_t>(j - 1)] -
                                               (n_free - j + 1);
    }
    CumulativeCounts counts_r(z_r, -s.m2 - s.m3 - 1, std::max<std::int64_t>(s.m3 - 1, -1));

    auto sa_table = [&](std::int64_t r2) {
        std::vector<std::int64_t> z(static_cast<std::size_t>(s.m2));
        for (std::int64_t i = 1; i <= s.m2; ++i) {
            z[static_cast<std::size_t>(i - 1)] =
                extremal_rank(i, s.m2, r2, n_free) - s.a[static_cast<std::size_t>(i - 1)];
        }
        return CumulativeCounts(z, -s.m3, s.m1 + s.m3);
    };

    // Seed the r2 = 0 column along r3 with the diagonal step, which advances
    // both coordinates of the doubly missing block at once.
    std::vector<std::int64_t> column(static_cast<std::size_t>(s.m3 + 1));
    column[0] = scan_candidate(s, 0, 0, 0);
    {
        CumulativeCounts sa0 = sa_table(0);
        for (std::int64_t r3 = 0; r3 < s.m3; ++r3) {
            std::int64_t k = 2 * r3 - s.m3;
            std::int64_t delta = 2 * sa0.at(k) + 2 * sa0.at(k + 1) - 2 * s.m2;
            delta += 2 * counts_r.at(k) + 2 * counts_r.at(k + 1) - 2 * s.m1;
            delta += 2 * counts_d.at(k) + 2 * counts_d.at(k + 1) - 2 * n_rest;
            delta += std::llabs(2 * r3 + 1 - s.n) - std::llabs(s.n + 1 - 2 * (s.m3 - r3));
            column[static_cast<std::size_t>(r3 + 1)] = column[static_cast<std::size_t>(r3)] +
                                                       delta;
        }
    }

    SweepResult out{column[0], 0};
    for (std::int64_t r2 = 0; r2 <= s.m2; ++r2) {
        CumulativeCounts counts_sa = sa_table(r2);
        for (std::int64_t r3 = 0; r3 <= s.m3; ++r3) {
            std::int64_t value = column[static_cast<std::size_t>(r3)];
            out.best = std::max(out.best, value);
            ++out.cells;
            for (std::int64_t r1 = 0; r1 < s.m1; ++r1) {
                std::int64_t partner = s.b[static_cast<std::size_t>(s.m1 - r1 - 1)] + r2 -
                                       2 * r3 + s.m3;
                std::int64_t c1 = std::llabs(r1 + 1 - partner) -
                                  std::llabs(n_free - s.m1 + r1 + 1 - partner);
                value += 2 * counts_sa.at(r1 + 2 * r3 - s.m3) - s.m2;
                value += 2 * counts_d.at(r1 - r2 + 2 * r3 - s.m3) - n_rest;
                value += c1;
                out.best = std::max(out.best, value);
                ++out.cells;
            }
        }
        if (r2 < s.m2) {
            for (std::int64_t r3 = 0; r3 <= s.m3; ++r3) {
                std::int64_t partner = s.a[static_cast<std::size_t>(s.m2 - r2 - 1)] + 2 * r3 -
                                       s.m3;
                std::int64_t c2 = std::llabs(r2 + 1 - partner) -
                                  std::llabs(n_free - s.m2 + r2 + 1 - partner);
                column[static_cast<std::size_t>(r3)] +=
                    s.m1 - 2 * counts_r.at(2 * r3 - s.m3 - r2 - 1) + n_rest -
                    2 * counts_d.at(-r2 - 1 + 2 * r3 - s.m3) + c2;
            }
        }
    }
    return out;
}

std::vector<std::int64_t> case1_scan_values(const PairedSample& sample) {
    MissingPattern pattern = classify_pattern(sample);
    if (!pattern.w.empty() || (!pattern.u.empty() && !pattern.v.empty())) {
        raise(errc::wrong_case, "missing entries must be confined to one coordinate");
    }
    ScanSetup s = make_scan_setup(sample, !pattern.v.empty());
    std::vector<std::int64_t> values;
    values.reserve(static_cast<std::size_t>(s.m1 + 1));
    std::int64_t value = scan_candidate(s, 0, 0, 0);
    values.push_back(value);
    if (s.m1 == 0) return values;
    CumulativeCounts counts(s.d, 0, s.m1 - 1);
    for (std::int64_t r = 0; r < s.m1; ++r) {
        std::int64_t partner = s.b[static_cast<std::size_t>(s.m1 - r - 1)];
        value += 2 * counts.at(r) - (s.n - s.m1) + std::llabs(r + 1 - partner) -
                 std::llabs(s.n - s.m1 + r + 1 - partner);
        values.push_back(value);
    }
    return values;
}

}  // namespace detail

std::int64_t candidate_value_case1(const PairedSample& sample, std::int64_t r) {
    MissingPattern pattern = classify_pattern(sample);
    if (!pattern.w.empty() || (!pattern.u.empty() && !pattern.v.empty())) {
        raise(errc::wrong_case, "missing entries must be confined to one coordinate");
    }
    detail::ScanSetup s = detail::make_scan_setup(sample, !pattern.v.empty());
    return detail::scan_candidate(s, r, 0, 0);
}

std::int64_t upper_bound_case1(const PairedSample& sample) {
    MissingPattern pattern = classify_pattern(sample);
    if (!pattern.w.empty() || (!pattern.u.empty() && !pattern.v.empty())) {
        raise(errc::wrong_case, "missing entries must be confined to one coordinate");
    }
    std::int64_t n = static_cast<std::int64_t>(sample.size());
    std::int64_t missing = static_cast<std::int64_t>(pattern.u.size() + pattern.v.size());
    if (missing == n) return max_footrule(n);
    detail::ScanSetup s = detail::make_scan_setup(sample, !pattern.v.empty());
    return detail::case1_sweep(s).best;
}

std::int64_t upper_bound_case2(const PairedSample& sample) {
    MissingPattern pattern = classify_pattern(sample);
    if (!pattern.w.empty()) {
        raise(errc::wrong_case, "no pair may have both entries missing");
    }
    if (pattern.u.empty() || pattern.v.empty()) return upper_bound_case1(sample);
    std::int64_t n = static_cast<std::int64_t>(sample.size());
    if (pattern.u.size() + pattern.v.size() == sample.size()) return max_footrule(n);
    detail::ScanSetup s =
        detail::make_scan_setup(sample, pattern.v.size() > pattern.u.size());
    return detail::case2_sweep(s).best;
}

std::int64_t upper_bound_case3(const PairedSample& sample) {
    MissingPattern pattern = classify_pattern(sample);
    if (!pattern.u.empty() || !pattern.v.empty()) {
        raise(errc::wrong_case, "every incomplete pair must have both entries missing");
    }
    std::int64_t n = static_cast<std::int64_t>(sample.size());
    if (pattern.w.size() == sample.size()) return max_footrule(n);
    detail::ScanSetup s = detail::make_scan_setup(sample, false);
    if (s.m3 == 0) return detail::scan_candidate(s, 0, 0, 0);
    return detail::case3_sweep(s).best;
}

std::int64_t upper_bound_general(const PairedSample& sample) {
    MissingPattern pattern = classify_pattern(sample);
    if (pattern.u.empty() && pattern.v.empty()) return upper_bound_case3(sample);
    if (pattern.w.empty()) return upper_bound_case2(sample);
    std::int64_t n = static_cast<std::int64_t>(sample.size());
    if (pattern.complete.empty()) return max_footrule(n);
    detail::ScanSetup s =
        detail::make_scan_setup(sample, pattern.v.size() > pattern.u.size());
    return detail::general_sweep(s).best;
}

FootruleBounds bounds(const PairedSample& sample) {
    return FootruleBounds{lower_bound(sample), upper_bound_general(sample)};
}

}  // namespace footrule
