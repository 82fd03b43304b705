#include "footrule/sample.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace footrule {

namespace {

// Returns the 1-based indices of the first duplicate among observed values,
// or {0, 0} when the coordinate is duplicate-free.
std::pair<std::size_t, std::size_t> find_duplicate(const std::vector<std::optional<double>>& column) {
    std::vector<std::size_t> observed;
    observed.reserve(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i].has_value()) observed.push_back(i);
    }
    std::sort(observed.begin(), observed.end(), [&](std::size_t lhs, std::size_t rhs) {
        double a = *column[lhs];
        double b = *column[rhs];
        if (a != b) return a < b;
        return lhs < rhs;
    });
    for (std::size_t k = 1; k < observed.size(); ++k) {
        if (*column[observed[k - 1]] == *column[observed[k]]) {
            return {observed[k - 1] + 1, observed[k] + 1};
        }
    }
    return {0, 0};
}

void check_finite(const std::vector<std::optional<double>>& column, char name) {
    for (std::size_t i = 0; i < column.size(); ++i) {
        if (column[i].has_value() && !std::isfinite(*column[i])) {
            std::ostringstream msg;
            msg << "non-finite " << name << " value at index " << (i + 1)
                << "; missing values must be encoded as absent, not NaN";
            raise(errc::invalid_argument, msg.str());
        }
    }
}

}  // namespace

PairedSample PairedSample::create(std::vector<std::optional<double>> x,
                                  std::vector<std::optional<double>> y) {
    if (x.size() != y.size()) {
        raise(errc::length_mismatch, "x and y must have the same length");
    }
    if (x.empty()) {
        raise(errc::invalid_argument, "sample must contain at least one pair");
    }
    check_finite(x, 'x');
    check_finite(y, 'y');
    PairedSample sample{std::move(x), std::move(y)};
    validate_distinct(sample);
    return sample;
}

PairedSample PairedSample::from_full(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<std::optional<double>> ox(x.begin(), x.end());
    std::vector<std::optional<double>> oy(y.begin(), y.end());
    return create(std::move(ox), std::move(oy));
}

PairedSample PairedSample::swapped() const {
    PairedSample out;
    out.x = y;
    out.y = x;
    return out;
}

void validate_distinct(const PairedSample& sample) {
    if (auto [i, j] = find_duplicate(sample.x); i != 0) {
        std::ostringstream msg;
        msg << "duplicate x value at indices " << i << " and " << j;
        raise(errc::duplicate_value, msg.str());
    }
    if (auto [i, j] = find_duplicate(sample.y); i != 0) {
        std::ostringstream msg;
        msg << "duplicate y value at indices " << i << " and " << j;
        raise(errc::duplicate_value, msg.str());
    }
}

MissingPattern classify_pattern(const PairedSample& sample) {
    MissingPattern pattern;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        bool has_x = sample.x[i].has_value();
        bool has_y = sample.y[i].has_value();
        if (has_x && has_y) {
            pattern.complete.push_back(i);
        } else if (!has_x && has_y) {
            pattern.u.push_back(i);
        } else if (has_x && !has_y) {
            pattern.v.push_back(i);
        } else {
            pattern.w.push_back(i);
        }
    }
    if (pattern.w.empty()) {
        bool one_sided = pattern.u.empty() != pattern.v.empty();
        pattern.missing_case = one_sided ? MissingCase::case_i : MissingCase::case_ii;
    } else if (pattern.u.empty() && pattern.v.empty()) {
        pattern.missing_case = MissingCase::case_iii;
    } else {
        pattern.missing_case = MissingCase::general;
    }
    return pattern;
}

RankVector rank_vector(std::span<const double> values) {
    if (values.empty()) {
        raise(errc::invalid_argument, "cannot rank an empty vector");
    }
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t lhs, std::size_t rhs) { return values[lhs] < values[rhs]; });
    for (std::size_t k = 1; k < order.size(); ++k) {
        if (values[order[k - 1]] == values[order[k]]) {
            std::ostringstream msg;
            msg << "duplicate value at indices " << (order[k - 1] + 1) << " and "
                << (order[k] + 1);
            raise(errc::duplicate_value, msg.str());
        }
    }
    RankVector ranks(values.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        ranks[order[k]] = static_cast<Rank>(k + 1);
    }
    return ranks;
}

RankVector rank_with_index_tiebreak(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t lhs, std::size_t rhs) {
        if (values[lhs] != values[rhs]) return values[lhs] < values[rhs];
        return lhs < rhs;
    });
    RankVector ranks(values.size());
    for (std::size_t k = 0; k < order.size(); ++k) {
        ranks[order[k]] = static_cast<Rank>(k + 1);
    }
    return ranks;
}

}  // namespace footrule
