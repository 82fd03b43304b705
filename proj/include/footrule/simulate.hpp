#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "footrule/sample.hpp"

namespace footrule {

enum class Mechanism {
    mcar,
    mnar_product,   // selection biased toward pairs with x*y > 0
    mnar_rankdiff,  // selection biased toward pairs with |rank diff| < n/2
};

enum class Imputation { mean, median, hot_deck };

/// Testing methods; values double as bitmask positions in SimConfig::methods.
enum class Method : std::uint32_t {
    proposed = 0,
    footrule_ignore,
    footrule_complete,
    tau_ignore,
    tau_complete,
    rho_ignore,
    rho_complete,
    footrule_mean,
    footrule_median,
    footrule_hotdeck,
    tau_mean,
    tau_median,
    tau_hotdeck,
    rho_mean,
    rho_median,
    rho_hotdeck,
};

inline constexpr std::size_t kMethodCount = 16;
inline constexpr std::uint32_t kAllMethods = (1u << kMethodCount) - 1;

const char* method_name(Method m);
/// Bit for a method name as printed by method_name; returns 0 if unknown.
std::uint32_t method_bit_from_name(const std::string& name);

struct SimConfig {
    std::int64_t n = 200;
    double gamma = 0.0;  // covariance coefficient of the bivariate normal
    double s = 0.0;      // proportion of incomplete pairs
    Mechanism mechanism = Mechanism::mcar;
    double alpha = 0.05;
    std::int64_t trials = 1000;
    std::uint64_t seed = 0;
    std::uint32_t methods = kAllMethods;
    bool reject_on_equal = false;
    int threads = 0;  // 0 = auto
};

struct MethodSummary {
    Method method = Method::proposed;
    std::int64_t rejections = 0;
    double reject_rate = 0.0;
    double std_error = 0.0;  // sqrt(p(1-p)/trials)
};

/// Trial means of the scaled coefficients and their bounds (the quantities
/// plotted in the bound-behavior figures). NaN when never defined.
struct CoefficientMeans {
    double footrule_lower = 0.0;  // scaled coefficient at d_max
    double footrule_upper = 0.0;  // scaled coefficient at d_min
    double footrule_ignore = 0.0;
    double footrule_complete = 0.0;
    double tau_lower = 0.0;
    double tau_upper = 0.0;
    double tau_ignore = 0.0;
    double tau_complete = 0.0;
    double rho_ignore = 0.0;
    double rho_complete = 0.0;
};

struct ExperimentSummary {
    SimConfig config;
    std::vector<MethodSummary> methods;
    CoefficientMeans means;
};

/// n i.i.d. pairs from N(0, [[1,gamma],[gamma,1]]).
PairedSample gen_bivariate_normal(std::int64_t n, double gamma, std::mt19937_64& rng);

/// Index sets T of size floor(s*n), 0-based.
std::vector<std::size_t> select_missing_mcar(std::int64_t n, double s, std::mt19937_64& rng);
std::vector<std::size_t> select_missing_mnar_product(const PairedSample& sample, double s,
                                                     std::mt19937_64& rng);
std::vector<std::size_t> select_missing_mnar_rankdiff(const PairedSample& sample, double s,
                                                      std::mt19937_64& rng);

/// Each selected index loses x, y, or both with probability 1/3 each.
PairedSample apply_missingness(const PairedSample& sample, const std::vector<std::size_t>& t_set,
                               std::mt19937_64& rng);

/// Mean/median/hot-deck single imputation per coordinate.
PairedSample impute_baseline(const PairedSample& sample, Imputation method, std::mt19937_64& rng);

/// Two-sided p-values of the baseline tests on fully observed rank vectors.
double tau_test_pvalue(const RankVector& rx, const RankVector& ry);
double rho_test_pvalue(const RankVector& rx, const RankVector& ry);

ExperimentSummary run_experiment(const SimConfig& config);

}  // namespace footrule
