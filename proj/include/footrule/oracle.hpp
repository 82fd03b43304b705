#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "footrule/bounds.hpp"
#include "footrule/sample.hpp"

namespace footrule {

struct EnumerationBudget {
    std::uint64_t max_candidates = 10'000'000;
};

/// Number of attainable (rank(x), rank(y)) pairs: n!^2 / ((n-mX)! (n-mY)!),
/// saturated at uint64 max.
std::uint64_t enumeration_count(const PairedSample& sample);

/// Visits every pair of full rank vectors consistent with the observed values'
/// relative order in each coordinate. Throws Error(errc::budget_exceeded) if
/// the enumeration count exceeds the budget.
void enumerate_rank_pairs(const PairedSample& sample, const EnumerationBudget& budget,
                          const std::function<void(const RankVector&, const RankVector&)>& fn);

/// Convenience collector for small enumerations.
std::vector<std::pair<RankVector, RankVector>> collect_rank_pairs(const PairedSample& sample,
                                                                  const EnumerationBudget& budget);

/// Exact min/max footrule by exhaustive enumeration; the ground truth the
/// linear-scan bounds are checked against.
FootruleBounds brute_force_bounds(const PairedSample& sample,
                                  const EnumerationBudget& budget = {});

}  // namespace footrule
