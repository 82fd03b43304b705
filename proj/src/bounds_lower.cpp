#include <algorithm>
#include <cstdlib>
#include <limits>
#include <vector>

#include "footrule/bounds.hpp"

namespace footrule {

namespace {

constexpr Rank kMissing = -1;

// Ranks of the observed entries among themselves; kMissing elsewhere.
std::vector<Rank> observed_ranks(const std::vector<std::optional<double>>& column) {
    std::vector<std::size_t> observed;
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i].has_value()) observed.push_back(i);
    }
    std::sort(observed.begin(), observed.end(),
              [&](std::size_t lhs, std::size_t rhs) { return *column[lhs] < *column[rhs]; });
    std::vector<Rank> ranks(column.size(), kMissing);
    for (std::size_t k = 0; k < observed.size(); ++k) {
        ranks[observed[k]] = static_cast<Rank>(k + 1);
    }
    return ranks;
}

// Minimum footrule once one side is fully ranked: each missing entry is
// inserted at its partner's rank, in increasing partner-rank order, which
// leaves the missing entries exactly at those ranks and packs the observed
// entries into the remaining rank slots in their original order.
std::int64_t complete_against_full(const std::vector<Rank>& full,
                                   const std::vector<Rank>& partial) {
    std::size_t n = full.size();
    std::vector<bool> taken(n + 1, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (partial[i] == kMissing) taken[static_cast<std::size_t>(full[i])] = true;
    }
    std::vector<Rank> slot;
    slot.reserve(n);
    for (std::size_t r = 1; r <= n; ++r) {
        if (!taken[r]) slot.push_back(static_cast<Rank>(r));
    }
    std::int64_t total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (partial[i] == kMissing) continue;
        total += std::llabs(slot[static_cast<std::size_t>(partial[i]) - 1] - full[i]);
    }
    return total;
}

std::int64_t footrule_of(const std::vector<Rank>& xr, const std::vector<Rank>& yr) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < xr.size(); ++i) {
        total += std::llabs(xr[i] - yr[i]);
    }
    return total;
}

// The interleaved argmin loop: while both coordinates still have missing
// entries, impute on the side whose candidate has the smaller observed
// partner rank (ties go to the x-side branch), then finish the remaining
// one-sided problem.
std::int64_t case2_minimum(const PairedSample& sample) {
    std::size_t n = sample.size();
    std::vector<Rank> xr = observed_ranks(sample.x);
    std::vector<Rank> yr = observed_ranks(sample.y);
    std::vector<std::size_t> u, v;  // U: x missing; V: y missing
    for (std::size_t i = 0; i < n; ++i) {
        if (xr[i] == kMissing) u.push_back(i);
        if (yr[i] == kMissing) v.push_back(i);
    }

    auto argmin = [](const std::vector<std::size_t>& set, const std::vector<Rank>& ranks) {
        std::size_t best = set.front();
        for (std::size_t i : set) {
            if (ranks[i] < ranks[best]) best = i;
        }
        return best;
    };
    auto insert_rank = [n](std::vector<Rank>& ranks, std::size_t at, Rank target) {
        for (std::size_t i = 0; i < n; ++i) {
            if (ranks[i] != kMissing && ranks[i] >= target) ++ranks[i];
        }
        ranks[at] = target;
    };
    auto erase_index = [](std::vector<std::size_t>& set, std::size_t value) {
        set.erase(std::find(set.begin(), set.end(), value));
    };

    while (!u.empty() && !v.empty()) {
        std::size_t u1 = argmin(v, xr);  // y missing, smallest observed x rank
        std::size_t u2 = argmin(u, yr);  // x missing, smallest observed y rank
        if (xr[u1] <= yr[u2]) {
            insert_rank(yr, u1, xr[u1]);
            erase_index(v, u1);
        } else {
            insert_rank(xr, u2, yr[u2]);
            erase_index(u, u2);
        }
    }

    if (!u.empty()) return complete_against_full(yr, xr);
    if (!v.empty()) return complete_against_full(xr, yr);
    return footrule_of(xr, yr);
}

}  // namespace

std::int64_t max_footrule(std::int64_t n) {
    return n * n / 2;
}

std::int64_t lower_bound_case1(const PairedSample& sample) {
    MissingPattern pattern = classify_pattern(sample);
    if (!pattern.w.empty() || (!pattern.u.empty() && !pattern.v.empty())) {
        raise(errc::wrong_case, "missing entries must be confined to one coordinate");
    }
    const PairedSample& oriented = pattern.v.empty() ? sample : sample.swapped();
    std::vector<Rank> yr = observed_ranks(oriented.y);  // fully observed side
    std::vector<Rank> xr = observed_ranks(oriented.x);
    return complete_against_full(yr, xr);
}

std::int64_t lower_bound_case2(const PairedSample& sample) {
    MissingPattern pattern = classify_pattern(sample);
    if (!pattern.w.empty()) {
        raise(errc::wrong_case, "no pair may have both entries missing");
    }
    return case2_minimum(sample);
}

std::int64_t lower_bound(const PairedSample& sample) {
    MissingPattern pattern = classify_pattern(sample);
    if (pattern.w.size() == sample.size()) return 0;  // ranks can be made identical
    if (pattern.w.empty()) return case2_minimum(sample);
    PairedSample reduced;
    reduced.x.reserve(sample.size() - pattern.w.size());
    reduced.y.reserve(sample.size() - pattern.w.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (sample.x[i].has_value() || sample.y[i].has_value()) {
            reduced.x.push_back(sample.x[i]);
            reduced.y.push_back(sample.y[i]);
        }
    }
    return case2_minimum(reduced);
}

}  // namespace footrule
