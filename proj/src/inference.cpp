#include <algorithm>
#include <cmath>

#include "footrule/inference.hpp"

namespace footrule {

NullApprox null_approx(std::int64_t n) {
    if (n < 2) {
        raise(errc::bad_dimension, "the null approximation requires n >= 2");
    }
    NullApprox out;
    out.n = n;
    double nn = static_cast<double>(n);
    out.mean = nn * nn / 3.0;
    out.variance = 2.0 * nn * nn * nn / 45.0;
    return out;
}

double footrule_pvalue(std::int64_t d, std::int64_t n) {
    NullApprox approx = null_approx(n);
    double z = (static_cast<double>(d) - approx.mean) / std::sqrt(approx.variance);
    // 2 min{F(d), 1-F(d)} collapses to the symmetric two-sided tail.
    double p = std::erfc(std::fabs(z) / std::sqrt(2.0));
    return std::clamp(p, 0.0, 1.0);
}

PValueBounds pvalue_bounds(const FootruleBounds& fb, std::int64_t n) {
    NullApprox approx = null_approx(n);
    PValueBounds out;
    out.p_at_dmin = footrule_pvalue(fb.d_min, n);
    out.p_at_dmax = footrule_pvalue(fb.d_max, n);
    out.p_min = std::min(out.p_at_dmin, out.p_at_dmax);
    bool same_side = (static_cast<double>(fb.d_min) - approx.mean) *
                         (static_cast<double>(fb.d_max) - approx.mean) >=
                     0.0;
    out.p_max = same_side ? std::max(out.p_at_dmin, out.p_at_dmax) : 1.0;
    return out;
}

TestOutcome decide(const PValueBounds& pb, double alpha, bool reject_on_equal) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        raise(errc::bad_alpha, "alpha must lie strictly between 0 and 1");
    }
    TestOutcome out;
    out.alpha = alpha;
    out.bounds = pb;
    bool reject = reject_on_equal ? pb.p_max <= alpha : pb.p_max < alpha;
    if (reject) {
        out.decision = TestDecision::reject;
    } else if (pb.p_min > alpha) {
        out.decision = TestDecision::fail_all_insignificant;
    } else {
        out.decision = TestDecision::fail_ambiguous;
    }
    return out;
}

const char* to_string(TestDecision decision) {
    switch (decision) {
        case TestDecision::reject:
            return "reject";
        case TestDecision::fail_all_insignificant:
            return "fail-all-insignificant";
        case TestDecision::fail_ambiguous:
            return "fail-ambiguous";
    }
    return "unknown";
}

}  // namespace footrule
