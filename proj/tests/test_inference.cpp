#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "footrule/bounds.hpp"
#include "footrule/inference.hpp"
#include "footrule/oracle.hpp"

using namespace footrule;

namespace {

// Independent standard normal CDF by composite Simpson integration of the
// density, used to cross-check the erfc-based implementation.
double normal_cdf_by_quadrature(double z) {
    if (z < -12.0) return 0.0;
    if (z > 12.0) return 1.0;
    double lo = -12.0;
    int steps = 24000;  // even
    double h = (z - lo) / steps;
    auto density = [](double t) { return std::exp(-0.5 * t * t) / std::sqrt(2.0 * M_PI); };
    double sum = density(lo) + density(z);
    for (int k = 1; k < steps; ++k) {
        sum += density(lo + k * h) * (k % 2 == 1 ? 4.0 : 2.0);
    }
    return sum * h / 3.0;
}

double pvalue_by_quadrature(std::int64_t d, std::int64_t n) {
    double mean = static_cast<double>(n) * n / 3.0;
    double sd = std::sqrt(2.0 * std::pow(static_cast<double>(n), 3.0) / 45.0);
    double f = normal_cdf_by_quadrature((static_cast<double>(d) - mean) / sd);
    return 2.0 * std::min(f, 1.0 - f);
}

}  // namespace

TEST_CASE("null approximation moments") {
    NullApprox approx = null_approx(100);
    CHECK(approx.mean == doctest::Approx(10000.0 / 3.0));
    CHECK(approx.variance == doctest::Approx(2.0e6 / 45.0));
    CHECK_THROWS_AS(null_approx(1), Error);
}

TEST_CASE("p-value at the mean is 1") {
    // d = n^2/3 exactly requires 3 | n^2; n = 99 gives mean 3267
    CHECK(footrule_pvalue(3267, 99) == doctest::Approx(1.0));
}

TEST_CASE("extreme d gives a vanishing p-value") {
    // z = -(10^4/3)/sqrt(2*10^6/45) ~ -15.81
    CHECK(footrule_pvalue(0, 100) < 1e-30);
    CHECK(footrule_pvalue(0, 100) > 0.0);
}

TEST_CASE("p-value against the quadrature oracle") {
    for (std::int64_t d : {0, 2000, 3000, 3333, 3500, 4000, 6000}) {
        CHECK(footrule_pvalue(d, 100) == doctest::Approx(pvalue_by_quadrature(d, 100)).epsilon(1e-8));
    }
    // d at mean + 1.959964 sd should give p close to 0.05
    double mean = 10000.0 / 3.0;
    double sd = std::sqrt(2.0e6 / 45.0);
    auto d = static_cast<std::int64_t>(std::llround(mean + 1.959964 * sd));
    CHECK(footrule_pvalue(d, 100) == doctest::Approx(0.05).epsilon(0.02));
}

TEST_CASE("p-value is symmetric about the mean") {
    std::int64_t n = 99;
    std::int64_t mean = n * n / 3;  // 3267, exact
    for (std::int64_t t : {1, 10, 100, 500, 1000}) {
        CHECK(footrule_pvalue(mean + t, n) ==
              doctest::Approx(footrule_pvalue(mean - t, n)).epsilon(1e-12));
    }
}

TEST_CASE("p-value bounds") {
    SUBCASE("straddling the mean forces p_max = 1") {
        PValueBounds pb = pvalue_bounds({1000, 6000}, 100);  // mean ~ 3333.3
        CHECK(pb.p_max == 1.0);
        CHECK(pb.p_min == doctest::Approx(std::min(pb.p_at_dmin, pb.p_at_dmax)));
    }
    SUBCASE("degenerate interval") {
        PValueBounds pb = pvalue_bounds({2400, 2400}, 100);
        CHECK(pb.p_min == pb.p_max);
        CHECK(pb.p_min == doctest::Approx(footrule_pvalue(2400, 100)));
    }
    SUBCASE("interval above the mean") {
        PValueBounds pb = pvalue_bounds({4000, 5000}, 100);
        CHECK(pb.p_min == doctest::Approx(footrule_pvalue(5000, 100)));
        CHECK(pb.p_max == doctest::Approx(footrule_pvalue(4000, 100)));
    }
    SUBCASE("interval below the mean") {
        PValueBounds pb = pvalue_bounds({1000, 2000}, 100);
        CHECK(pb.p_min == doctest::Approx(footrule_pvalue(1000, 100)));
        CHECK(pb.p_max == doctest::Approx(footrule_pvalue(2000, 100)));
    }
}

TEST_CASE("decision rule") {
    PValueBounds pb;
    pb.p_min = 0.01;
    pb.p_max = 0.03;
    CHECK(decide(pb, 0.05).decision == TestDecision::reject);

    pb.p_min = 0.2;
    pb.p_max = 0.9;
    CHECK(decide(pb, 0.05).decision == TestDecision::fail_all_insignificant);

    pb.p_min = 0.01;
    pb.p_max = 0.5;
    CHECK(decide(pb, 0.05).decision == TestDecision::fail_ambiguous);

    CHECK_THROWS_AS(decide(pb, 1.5), Error);
    CHECK_THROWS_AS(decide(pb, 0.0), Error);

    SUBCASE("boundary p_max == alpha") {
        pb.p_min = 0.01;
        pb.p_max = 0.05;
        CHECK(decide(pb, 0.05, false).decision == TestDecision::fail_ambiguous);
        CHECK(decide(pb, 0.05, true).decision == TestDecision::reject);
    }
}

TEST_CASE("decision strings") {
    CHECK(std::string(to_string(TestDecision::reject)) == "reject");
    CHECK(std::string(to_string(TestDecision::fail_ambiguous)) == "fail-ambiguous");
}

TEST_CASE("a rejection means every enumerated imputation is significant") {
    // reversed ranks at n = 60 with one missing entry: both bounds stay deep
    // in the upper tail, so the test rejects
    std::vector<std::optional<double>> x, y;
    for (int i = 0; i < 60; ++i) {
        x.emplace_back(static_cast<double>(60 - i));
        y.emplace_back(static_cast<double>(i + 1));
    }
    x[30] = std::nullopt;
    PairedSample s = PairedSample::create(x, y);
    auto nn = static_cast<std::int64_t>(s.size());
    double alpha = 0.05;
    TestOutcome outcome = decide(pvalue_bounds(bounds(s), nn), alpha);
    REQUIRE(outcome.decision == TestDecision::reject);
    enumerate_rank_pairs(s, {}, [&](const RankVector& rx, const RankVector& ry) {
        CHECK(footrule_pvalue(footrule_distance(rx, ry), nn) < alpha);
    });
}

TEST_CASE("every enumerated imputation's p-value lies inside the bounds") {
    std::mt19937_64 rng(401);
    for (int rep = 0; rep < 40; ++rep) {
        std::size_t n = 4 + rng() % 3;
        std::vector<double> xv(n), yv(n);
        for (std::size_t i = 0; i < n; ++i) xv[i] = static_cast<double>(i + 1);
        std::shuffle(xv.begin(), xv.end(), rng);
        yv = xv;
        std::shuffle(yv.begin(), yv.end(), rng);
        PairedSample s;
        s.x.assign(xv.begin(), xv.end());
        s.y.assign(yv.begin(), yv.end());
        s.x[rng() % n].reset();
        if (rng() % 2) s.y[rng() % n].reset();

        auto nn = static_cast<std::int64_t>(n);
        PValueBounds pb = pvalue_bounds(bounds(s), nn);
        enumerate_rank_pairs(s, {}, [&](const RankVector& rx, const RankVector& ry) {
            double p = footrule_pvalue(footrule_distance(rx, ry), nn);
            CHECK(p >= pb.p_min - 1e-12);
            CHECK(p <= pb.p_max + 1e-12);
        });
    }
}
