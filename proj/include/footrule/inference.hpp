#pragma once

#include <cstdint>

#include "footrule/coefficients.hpp"

namespace footrule {

/// Normal approximation to the null distribution of the footrule.
struct NullApprox {
    std::int64_t n = 0;
    double mean = 0.0;      // n^2 / 3
    double variance = 0.0;  // 2 n^3 / 45
};

NullApprox null_approx(std::int64_t n);

/// Two-sided p-value 2 min{F_n(d), 1 - F_n(d)} under the normal approximation.
/// The approximation is considered reliable from n = 40 up.
double footrule_pvalue(std::int64_t d, std::int64_t n);

struct PValueBounds {
    double p_min = 0.0;
    double p_max = 1.0;
    double p_at_dmin = 0.0;
    double p_at_dmax = 0.0;
};

/// p_min = min{p(d_min), p(d_max)}; p_max is their max unless the bound
/// interval straddles the null mean n^2/3, in which case p_max = 1.
PValueBounds pvalue_bounds(const FootruleBounds& fb, std::int64_t n);

enum class TestDecision {
    reject,
    fail_all_insignificant,
    fail_ambiguous,
};

struct TestOutcome {
    TestDecision decision = TestDecision::fail_ambiguous;
    double alpha = 0.05;
    PValueBounds bounds;
};

/// Reject iff p_max < alpha (or <= alpha with reject_on_equal);
/// fail_all_insignificant iff p_min > alpha; fail_ambiguous otherwise.
TestOutcome decide(const PValueBounds& pb, double alpha, bool reject_on_equal = false);

const char* to_string(TestDecision decision);

}  // namespace footrule
