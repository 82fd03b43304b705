#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "footrule/coefficients.hpp"

using namespace footrule;

namespace {

// Quadratic-time discordance count, kept as the reference for the merge-based
// implementation.
std::int64_t tau_by_double_loop(const RankVector& rx, const RankVector& ry) {
    std::int64_t count = 0;
    for (std::size_t i = 1; i < rx.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            bool x_up = rx[i] > rx[j];
            bool y_up = ry[i] > ry[j];
            if (x_up != y_up) ++count;
        }
    }
    return count;
}

RankVector random_permutation(std::size_t n, std::mt19937_64& rng) {
    RankVector perm(n);
    std::iota(perm.begin(), perm.end(), Rank{1});
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

const RankVector kIdentity8{1, 2, 3, 4, 5, 6, 7, 8};

}  // namespace

TEST_CASE("footrule values") {
    CHECK(footrule_distance({8, 3, 7, 4, 2, 6, 5, 1}, kIdentity8) == 24);
    CHECK(footrule_distance({3, 1, 2}, {3, 1, 2}) == 0);
    CHECK(footrule_distance({1, 2, 3, 4}, {4, 3, 2, 1}) == 8);
    CHECK_THROWS_AS(footrule_distance({1, 2}, {1, 2, 3}), Error);
}

TEST_CASE("spearman rho raw values") {
    CHECK(spearman_rho_raw({8, 4, 7, 1, 3, 6, 5, 2}, kIdentity8) == 122);
    CHECK(spearman_rho_raw({2, 1}, {2, 1}) == 0);
    CHECK(spearman_rho_raw({3, 2, 1}, {1, 2, 3}) == 8);
}

TEST_CASE("kendall tau raw values") {
    CHECK(kendall_tau_raw({8, 3, 7, 4, 2, 6, 5, 1}, kIdentity8) == 20);
    CHECK(kendall_tau_raw({1, 2, 3}, {1, 2, 3}) == 0);
    CHECK(kendall_tau_raw({1, 2, 3, 4}, {4, 3, 2, 1}) == 6);
}

TEST_CASE("merge-based tau equals the double loop") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = 1 + rng() % 40;
        RankVector rx = random_permutation(n, rng);
        RankVector ry = random_permutation(n, rng);
        CHECK(kendall_tau_raw(rx, ry) == tau_by_double_loop(rx, ry));
    }
}

TEST_CASE("scaling") {
    CHECK(scale_footrule(0, 5) == doctest::Approx(1.0));
    CHECK(scale_footrule(4, 3) == doctest::Approx(-0.5));
    CHECK(scale_footrule(24, 8) == doctest::Approx(1.0 - 72.0 / 63.0));

    CHECK(scale_tau(0, 7) == doctest::Approx(1.0));
    CHECK(scale_tau(6, 4) == doctest::Approx(-1.0));
    CHECK(scale_rho(8, 3) == doctest::Approx(-1.0));

    CHECK_THROWS_AS(scale_footrule(0, 1), Error);
    CHECK_THROWS_AS(scale_rho(0, 1), Error);
    CHECK_THROWS_AS(scale_tau(0, 0), Error);
}

TEST_CASE("scale_tau hits the endpoints exactly") {
    for (std::int64_t n = 2; n <= 40; ++n) {
        CHECK(scale_tau(0, n) == 1.0);
        CHECK(scale_tau(n * (n - 1) / 2, n) == -1.0);
    }
}

TEST_CASE("tau bounds from footrule bounds") {
    TauBounds tb = tau_bounds({24, 28}, 8);
    CHECK(tb.tau_min == doctest::Approx(12.0));
    CHECK(tb.tau_max == doctest::Approx(28.0));

    tb = tau_bounds({0, 0}, 5);
    CHECK(tb.tau_min == 0.0);
    CHECK(tb.tau_max == 0.0);

    tb = tau_bounds({0, 1000000}, 4);
    CHECK(tb.tau_max == doctest::Approx(6.0));
}

TEST_CASE("Diaconis-Graham sandwich tau <= D <= 2 tau") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 200; ++rep) {
        std::size_t n = 2 + rng() % 30;
        RankVector rx = random_permutation(n, rng);
        RankVector ry = random_permutation(n, rng);
        std::int64_t d = footrule_distance(rx, ry);
        std::int64_t tau = kendall_tau_raw(rx, ry);
        CHECK(tau <= d);
        CHECK(d <= 2 * tau);
        CHECK(d % 2 == 0);
    }
}

TEST_CASE("footrule and tau are invariant under common index permutations") {
    std::mt19937_64 rng(47);
    for (int rep = 0; rep < 100; ++rep) {
        std::size_t n = 2 + rng() % 20;
        RankVector rx = random_permutation(n, rng);
        RankVector ry = random_permutation(n, rng);
        std::vector<std::size_t> sigma(n);
        std::iota(sigma.begin(), sigma.end(), std::size_t{0});
        std::shuffle(sigma.begin(), sigma.end(), rng);
        RankVector px(n), py(n);
        for (std::size_t i = 0; i < n; ++i) {
            px[i] = rx[sigma[i]];
            py[i] = ry[sigma[i]];
        }
        CHECK(footrule_distance(px, py) == footrule_distance(rx, ry));
        CHECK(kendall_tau_raw(px, py) == kendall_tau_raw(rx, ry));
    }
}

TEST_CASE("coefficient_set ties the pieces together") {
    CoefficientSet cs = coefficient_set({8, 3, 7, 4, 2, 6, 5, 1}, kIdentity8);
    CHECK(cs.footrule == 24);
    CHECK(cs.rho_raw == 128);
    CHECK(cs.tau_raw == 20);
    CHECK(cs.footrule_scaled == doctest::Approx(scale_footrule(24, 8)));
    CHECK(cs.tau_scaled == doctest::Approx(scale_tau(20, 8)));
}
