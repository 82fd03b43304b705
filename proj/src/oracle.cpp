#include <algorithm>
#include <limits>
#include <sstream>

#include "footrule/oracle.hpp"

namespace footrule {

namespace {

struct Side {
    std::vector<std::size_t> missing;   // indices with no value, ascending
    std::vector<std::size_t> observed;  // remaining indices in value order
};

Side analyze(const std::vector<std::optional<double>>& column) {
    Side side;
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i].has_value()) {
            side.observed.push_back(i);
        } else {
            side.missing.push_back(i);
        }
    }
    std::sort(side.observed.begin(), side.observed.end(),
              [&](std::size_t lhs, std::size_t rhs) { return *column[lhs] < *column[rhs]; });
    return side;
}

// n (n-1) ... (n-m+1), saturating.
std::uint64_t falling_factorial(std::uint64_t n, std::uint64_t m) {
    std::uint64_t result = 1;
    for (std::uint64_t k = 0; k < m; ++k) {
        std::uint64_t factor = n - k;
        if (factor != 0 && result > std::numeric_limits<std::uint64_t>::max() / factor) {
            return std::numeric_limits<std::uint64_t>::max();
        }
        result *= factor;
    }
    return result;
}

// Every injective assignment of free ranks to the missing indices yields one
// completion; the observed indices absorb the leftover ranks in value order.
void for_each_completion(std::size_t n, const Side& side,
                         const std::function<void(const RankVector&)>& fn) {
    RankVector ranks(n, 0);
    std::vector<bool> used(n + 1, false);
    auto emit = [&]() {
        Rank next = 1;
        for (std::size_t obs : side.observed) {
            while (used[static_cast<std::size_t>(next)]) ++next;
            ranks[obs] = next++;
        }
        fn(ranks);
    };
    if (side.missing.empty()) {
        emit();
        return;
    }
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == side.missing.size()) {
            emit();
            return;
        }
        for (std::size_t r = 1; r <= n; ++r) {
            if (used[r]) continue;
            used[r] = true;
            ranks[side.missing[k]] = static_cast<Rank>(r);
            self(self, k + 1);
            used[r] = false;
        }
    };
    rec(rec, 0);
}

std::vector<RankVector> collect_completions(std::size_t n, const Side& side) {
    std::vector<RankVector> out;
    for_each_completion(n, side, [&](const RankVector& ranks) { out.push_back(ranks); });
    return out;
}

}  // namespace

std::uint64_t enumeration_count(const PairedSample& sample) {
    auto n = static_cast<std::uint64_t>(sample.size());
    std::uint64_t mx = 0, my = 0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        mx += !sample.x[i].has_value();
        my += !sample.y[i].has_value();
    }
    std::uint64_t cx = falling_factorial(n, mx);
    std::uint64_t cy = falling_factorial(n, my);
    if (cy != 0 && cx > std::numeric_limits<std::uint64_t>::max() / cy) {
        return std::numeric_limits<std::uint64_t>::max();
    }
    return cx * cy;
}

void enumerate_rank_pairs(const PairedSample& sample, const EnumerationBudget& budget,
                          const std::function<void(const RankVector&, const RankVector&)>& fn) {
    std::uint64_t count = enumeration_count(sample);
    if (count > budget.max_candidates) {
        std::ostringstream msg;
        msg << "enumeration would visit " << count << " rank-vector pairs, over the budget of "
            << budget.max_candidates;
        raise(errc::budget_exceeded, msg.str());
    }
    std::size_t n = sample.size();
    Side x_side = analyze(sample.x);
    Side y_side = analyze(sample.y);
    // Materialize the smaller side (at most sqrt(budget) completions) and
    // stream the other.
    std::uint64_t cx = falling_factorial(n, x_side.missing.size());
    std::uint64_t cy = falling_factorial(n, y_side.missing.size());
    if (cx <= cy) {
        std::vector<RankVector> xs = collect_completions(n, x_side);
        for_each_completion(n, y_side, [&](const RankVector& ry) {
            for (const RankVector& rx : xs) fn(rx, ry);
        });
    } else {
        std::vector<RankVector> ys = collect_completions(n, y_side);
        for_each_completion(n, x_side, [&](const RankVector& rx) {
            for (const RankVector& ry : ys) fn(rx, ry);
        });
    }
}

std::vector<std::pair<RankVector, RankVector>> collect_rank_pairs(
    const PairedSample& sample, const EnumerationBudget& budget) {
    std::vector<std::pair<RankVector, RankVector>> out;
    enumerate_rank_pairs(sample, budget, [&](const RankVector& rx, const RankVector& ry) {
        out.emplace_back(rx, ry);
    });
    return out;
}

FootruleBounds brute_force_bounds(const PairedSample& sample, const EnumerationBudget& budget) {
    FootruleBounds result{std::numeric_limits<std::int64_t>::max(),
                          std::numeric_limits<std::int64_t>::min()};
    enumerate_rank_pairs(sample, budget, [&](const RankVector& rx, const RankVector& ry) {
        std::int64_t d = 0;
        for (std::size_t i = 0; i < rx.size(); ++i) {
            d += std::abs(rx[i] - ry[i]);
        }
        result.d_min = std::min(result.d_min, d);
        result.d_max = std::max(result.d_max, d);
    });
    return result;
}

}  // namespace footrule
