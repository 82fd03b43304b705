#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "footrule/errors.hpp"

namespace footrule {

using Rank = std::int64_t;
using RankVector = std::vector<Rank>;

/// n index-aligned pairs of optionally observed real values. Observed values
/// are pairwise distinct within each coordinate; NaN/inf are rejected.
struct PairedSample {
    std::vector<std::optional<double>> x;
    std::vector<std::optional<double>> y;

    std::size_t size() const noexcept { return x.size(); }

    /// Validating constructor; throws Error(errc::duplicate_value) etc.
    static PairedSample create(std::vector<std::optional<double>> x,
                               std::vector<std::optional<double>> y);

    /// Convenience for fully observed data.
    static PairedSample from_full(const std::vector<double>& x, const std::vector<double>& y);

    /// Sample with x and y coordinates exchanged.
    PairedSample swapped() const;
};

enum class MissingCase {
    case_i,    // missing entries confined to one coordinate, W empty
    case_ii,   // W empty (includes fully observed)
    case_iii,  // U and V empty, W nonempty
    general,
};

/// Partition of indices (0-based) into U (x missing), V (y missing),
/// W (both missing) and the fully observed rest.
struct MissingPattern {
    std::vector<std::size_t> u;
    std::vector<std::size_t> v;
    std::vector<std::size_t> w;
    std::vector<std::size_t> complete;
    MissingCase missing_case = MissingCase::case_ii;
};

MissingPattern classify_pattern(const PairedSample& sample);

/// Throws Error(errc::duplicate_value) naming the coordinate and the offending
/// 1-based indices if either observed-value multiset contains a repeat.
void validate_distinct(const PairedSample& sample);

/// ranks[i] = #{ j : values[j] <= values[i] }; values must be pairwise distinct.
RankVector rank_vector(std::span<const double> values);

/// Ranks where equal values are ordered by their original index. Used by the
/// imputation baselines, which may introduce ties.
RankVector rank_with_index_tiebreak(std::span<const double> values);

}  // namespace footrule
