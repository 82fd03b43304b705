#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <thread>

#include "footrule/bounds.hpp"
#include "footrule/inference.hpp"
#include "footrule/simulate.hpp"

namespace footrule {

namespace {

constexpr std::array<const char*, kMethodCount> kMethodNames = {
    "proposed",        "footrule-ignore", "footrule-complete", "tau-ignore",
    "tau-complete",    "rho-ignore",      "rho-complete",      "footrule-mean",
    "footrule-median", "footrule-hotdeck", "tau-mean",          "tau-median",
    "tau-hotdeck",     "rho-mean",        "rho-median",        "rho-hotdeck",
};

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_trial_rng(std::uint64_t seed, std::uint64_t trial) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(trial)));
}

double uniform01(std::mt19937_64& rng) {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

std::int64_t incomplete_count(std::int64_t n, double s) {
    if (s < 0.0 || s > 1.0) {
        raise(errc::invalid_argument, "missing proportion s must lie in [0, 1]");
    }
    auto t = static_cast<std::int64_t>(std::floor(s * static_cast<double>(n) + 1e-9));
    return std::clamp<std::int64_t>(t, 0, n);
}

// Uniform k-subset by partial Fisher-Yates over the given pool.
std::vector<std::size_t> draw_subset(std::vector<std::size_t> pool, std::size_t k,
                                     std::mt19937_64& rng) {
    for (std::size_t i = 0; i < k; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
        std::swap(pool[i], pool[pick(rng)]);
    }
    pool.resize(k);
    return pool;
}

void require_fully_observed(const PairedSample& sample, const char* what) {
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (!sample.x[i].has_value() || !sample.y[i].has_value()) {
            raise(errc::invalid_argument,
                  std::string(what) + " requires a fully observed sample");
        }
    }
}

// Exact-size selection realizing the conditional inclusion probabilities
// min{1, sn/q} on the favored set and max{0, (sn-q)/(n-q)} elsewhere.
std::vector<std::size_t> biased_selection(const std::vector<bool>& favored, std::int64_t t,
                                          std::mt19937_64& rng) {
    std::vector<std::size_t> fav, rest;
    for (std::size_t i = 0; i < favored.size(); ++i) {
        (favored[i] ? fav : rest).push_back(i);
    }
    auto want = static_cast<std::size_t>(t);
    if (want <= fav.size()) {
        return draw_subset(std::move(fav), want, rng);
    }
    std::vector<std::size_t> extra = draw_subset(std::move(rest), want - fav.size(), rng);
    fav.insert(fav.end(), extra.begin(), extra.end());
    return fav;
}

double scaled_tau_value(double tau_raw, std::int64_t n) {
    double nn = static_cast<double>(n);
    return 1.0 - 4.0 * tau_raw / (nn * (nn - 1.0));
}

double two_sided_normal_pvalue(double z) {
    return std::clamp(std::erfc(std::fabs(z) / std::sqrt(2.0)), 0.0, 1.0);
}

// Per-trial record; coefficient slots follow CoefficientMeans field order.
constexpr std::size_t kCoeffCount = 10;
struct TrialRecord {
    std::uint32_t rejections = 0;
    std::array<double, kCoeffCount> coeffs{};
};

struct StatisticPValues {
    double footrule = 1.0;
    double tau = 1.0;
    double rho = 1.0;
};

StatisticPValues statistic_pvalues(const RankVector& rx, const RankVector& ry) {
    StatisticPValues out;
    if (rx.size() < 2) return out;
    auto n = static_cast<std::int64_t>(rx.size());
    out.footrule = footrule_pvalue(footrule_distance(rx, ry), n);
    out.tau = tau_test_pvalue(rx, ry);
    out.rho = rho_test_pvalue(rx, ry);
    return out;
}

std::vector<double> observed_values(const std::vector<std::optional<double>>& column) {
    std::vector<double> out;
    for (const auto& value : column) {
        if (value.has_value()) out.push_back(*value);
    }
    return out;
}

TrialRecord run_trial(const SimConfig& cfg, std::uint64_t trial) {
    std::mt19937_64 rng = make_trial_rng(cfg.seed, trial);
    PairedSample full = gen_bivariate_normal(cfg.n, cfg.gamma, rng);

    std::vector<std::size_t> t_set;
    switch (cfg.mechanism) {
        case Mechanism::mcar:
            t_set = select_missing_mcar(cfg.n, cfg.s, rng);
            break;
        case Mechanism::mnar_product:
            t_set = select_missing_mnar_product(full, cfg.s, rng);
            break;
        case Mechanism::mnar_rankdiff:
            t_set = select_missing_mnar_rankdiff(full, cfg.s, rng);
            break;
    }
    PairedSample deleted = apply_missingness(full, t_set, rng);

    auto enabled = [&](Method m) {
        return (cfg.methods & (1u << static_cast<std::uint32_t>(m))) != 0;
    };
    TrialRecord record;
    record.coeffs.fill(std::numeric_limits<double>::quiet_NaN());
    auto note_reject = [&](Method m, double p) {
        bool reject = cfg.reject_on_equal ? p <= cfg.alpha : p < cfg.alpha;
        if (reject) record.rejections |= 1u << static_cast<std::uint32_t>(m);
    };

    // Bounds of the partially observed sample: the proposed test plus the
    // scaled bound coefficients.
    FootruleBounds fb = bounds(deleted);
    PValueBounds pv = pvalue_bounds(fb, cfg.n);
    TestOutcome outcome = decide(pv, cfg.alpha, cfg.reject_on_equal);
    if (enabled(Method::proposed) && outcome.decision == TestDecision::reject) {
        record.rejections |= 1u << static_cast<std::uint32_t>(Method::proposed);
    }
    TauBounds tb = tau_bounds(fb, cfg.n);
    record.coeffs[0] = scale_footrule(fb.d_max, cfg.n);
    record.coeffs[1] = scale_footrule(fb.d_min, cfg.n);
    record.coeffs[4] = scaled_tau_value(tb.tau_max, cfg.n);
    record.coeffs[5] = scaled_tau_value(tb.tau_min, cfg.n);

    // Complete-data reference methods.
    {
        std::vector<double> xv = observed_values(full.x);
        std::vector<double> yv = observed_values(full.y);
        RankVector rx = rank_vector(xv);
        RankVector ry = rank_vector(yv);
        StatisticPValues p = statistic_pvalues(rx, ry);
        note_reject(Method::footrule_complete, p.footrule);
        note_reject(Method::tau_complete, p.tau);
        note_reject(Method::rho_complete, p.rho);
        record.coeffs[3] = scale_footrule(footrule_distance(rx, ry), cfg.n);
        record.coeffs[7] = scale_tau(kendall_tau_raw(rx, ry), cfg.n);
        record.coeffs[9] = scale_rho(spearman_rho_raw(rx, ry), cfg.n);
    }

    // Ignore methods: complete pairs only.
    {
        std::vector<double> xo, yo;
        for (std::size_t i = 0; i < deleted.size(); ++i) {
            if (deleted.x[i].has_value() && deleted.y[i].has_value()) {
                xo.push_back(*deleted.x[i]);
                yo.push_back(*deleted.y[i]);
            }
        }
        if (xo.size() >= 2) {
            RankVector rx = rank_vector(xo);
            RankVector ry = rank_vector(yo);
            StatisticPValues p = statistic_pvalues(rx, ry);
            note_reject(Method::footrule_ignore, p.footrule);
            note_reject(Method::tau_ignore, p.tau);
            note_reject(Method::rho_ignore, p.rho);
            auto no = static_cast<std::int64_t>(xo.size());
            record.coeffs[2] = scale_footrule(footrule_distance(rx, ry), no);
            record.coeffs[6] = scale_tau(kendall_tau_raw(rx, ry), no);
            record.coeffs[8] = scale_rho(spearman_rho_raw(rx, ry), no);
        }
    }

    // Single-imputation baselines; ties introduced by imputation are ranked
    // by original index order.
    struct ImputationGroup {
        Imputation kind;
        Method footrule_m, tau_m, rho_m;
    };
    constexpr ImputationGroup groups[] = {
        {Imputation::mean, Method::footrule_mean, Method::tau_mean, Method::rho_mean},
        {Imputation::median, Method::footrule_median, Method::tau_median, Method::rho_median},
        {Imputation::hot_deck, Method::footrule_hotdeck, Method::tau_hotdeck,
         Method::rho_hotdeck},
    };
    for (const ImputationGroup& group : groups) {
        if (!enabled(group.footrule_m) && !enabled(group.tau_m) && !enabled(group.rho_m)) {
            continue;
        }
        PairedSample imputed = impute_baseline(deleted, group.kind, rng);
        std::vector<double> xv(imputed.size()), yv(imputed.size());
        for (std::size_t i = 0; i < imputed.size(); ++i) {
            xv[i] = *imputed.x[i];
            yv[i] = *imputed.y[i];
        }
        RankVector rx = rank_with_index_tiebreak(xv);
        RankVector ry = rank_with_index_tiebreak(yv);
        StatisticPValues p = statistic_pvalues(rx, ry);
        note_reject(group.footrule_m, p.footrule);
        note_reject(group.tau_m, p.tau);
        note_reject(group.rho_m, p.rho);
    }
    return record;
}

}  // namespace

const char* method_name(Method m) {
    return kMethodNames[static_cast<std::size_t>(m)];
}

std::uint32_t method_bit_from_name(const std::string& name) {
    for (std::size_t i = 0; i < kMethodCount; ++i) {
        if (name == kMethodNames[i]) return 1u << i;
    }
    return 0;
}

PairedSample gen_bivariate_normal(std::int64_t n, double gamma, std::mt19937_64& rng) {
    if (n < 1) {
        raise(errc::invalid_argument, "sample size must be positive");
    }
    if (!(std::fabs(gamma) < 1.0)) {
        raise(errc::invalid_argument, "covariance coefficient gamma must satisfy |gamma| < 1");
    }
    double mix = std::sqrt(1.0 - gamma * gamma);
    std::vector<std::optional<double>> xs(static_cast<std::size_t>(n));
    std::vector<std::optional<double>> ys(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double u1 = uniform01(rng);
        double u2 = uniform01(rng);
        double radius = std::sqrt(-2.0 * std::log(u1));
        double angle = 2.0 * M_PI * u2;
        double z1 = radius * std::cos(angle);
        double z2 = radius * std::sin(angle);
        xs[i] = z1;
        ys[i] = gamma * z1 + mix * z2;
    }
    return PairedSample::create(std::move(xs), std::move(ys));
}

std::vector<std::size_t> select_missing_mcar(std::int64_t n, double s, std::mt19937_64& rng) {
    std::int64_t t = incomplete_count(n, s);
    std::vector<std::size_t> pool(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    return draw_subset(std::move(pool), static_cast<std::size_t>(t), rng);
}

std::vector<std::size_t> select_missing_mnar_product(const PairedSample& sample, double s,
                                                     std::mt19937_64& rng) {
    require_fully_observed(sample, "the MNAR product mechanism");
    std::int64_t t = incomplete_count(static_cast<std::int64_t>(sample.size()), s);
    std::vector<bool> favored(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        favored[i] = *sample.x[i] * *sample.y[i] > 0.0;
    }
    return biased_selection(favored, t, rng);
}

std::vector<std::size_t> select_missing_mnar_rankdiff(const PairedSample& sample, double s,
                                                      std::mt19937_64& rng) {
    require_fully_observed(sample, "the MNAR rank-difference mechanism");
    std::size_t n = sample.size();
    std::int64_t t = incomplete_count(static_cast<std::int64_t>(n), s);
    std::vector<double> xv(n), yv(n);
    for (std::size_t i = 0; i < n; ++i) {
        xv[i] = *sample.x[i];
        yv[i] = *sample.y[i];
    }
    RankVector rx = rank_vector(xv);
    RankVector ry = rank_vector(yv);
    std::vector<bool> favored(n);
    for (std::size_t i = 0; i < n; ++i) {
        favored[i] = std::llabs(rx[i] - ry[i]) * 2 < static_cast<std::int64_t>(n);
    }
    return biased_selection(favored, t, rng);
}

PairedSample apply_missingness(const PairedSample& sample, const std::vector<std::size_t>& t_set,
                               std::mt19937_64& rng) {
    PairedSample out = sample;
    std::uniform_int_distribution<int> state(0, 2);
    for (std::size_t i : t_set) {
        if (i >= sample.size()) {
            raise(errc::invalid_argument, "selection index out of range");
        }
        switch (state(rng)) {
            case 0:
                out.x[i].reset();
                break;
            case 1:
                out.y[i].reset();
                break;
            default:
                out.x[i].reset();
                out.y[i].reset();
                break;
        }
    }
    return out;
}

PairedSample impute_baseline(const PairedSample& sample, Imputation method,
                             std::mt19937_64& rng) {
    PairedSample out = sample;
    for (auto* column : {&out.x, &out.y}) {
        std::vector<double> observed = observed_values(*column);
        if (observed.empty()) {
            raise(errc::all_missing, "cannot impute a coordinate with no observed values");
        }
        double fill = 0.0;
        if (method == Imputation::mean) {
            for (double v : observed) fill += v;
            fill /= static_cast<double>(observed.size());
        } else if (method == Imputation::median) {
            std::sort(observed.begin(), observed.end());
            std::size_t mid = observed.size() / 2;
            fill = observed.size() % 2 == 1 ? observed[mid]
                                            : (observed[mid - 1] + observed[mid]) / 2.0;
        }
        std::uniform_int_distribution<std::size_t> pick(0, observed.size() - 1);
        for (auto& cell : *column) {
            if (cell.has_value()) continue;
            cell = method == Imputation::hot_deck ? observed[pick(rng)] : fill;
        }
    }
    return out;
}

double tau_test_pvalue(const RankVector& rx, const RankVector& ry) {
    auto n = static_cast<std::int64_t>(rx.size());
    if (n < 2) return 1.0;
    std::int64_t discordant = kendall_tau_raw(rx, ry);
    double pairs = static_cast<double>(n) * (static_cast<double>(n) - 1.0) / 2.0;
    double statistic = pairs - 2.0 * static_cast<double>(discordant);  // concordant - discordant
    double variance = static_cast<double>(n) * (n - 1.0) * (2.0 * n + 5.0) / 18.0;
    return two_sided_normal_pvalue(statistic / std::sqrt(variance));
}

double rho_test_pvalue(const RankVector& rx, const RankVector& ry) {
    auto n = static_cast<std::int64_t>(rx.size());
    if (n < 2) return 1.0;
    double rho = scale_rho(spearman_rho_raw(rx, ry), n);
    return two_sided_normal_pvalue(rho * std::sqrt(static_cast<double>(n) - 1.0));
}

ExperimentSummary run_experiment(const SimConfig& config) {
    SimConfig cfg = config;
    if (cfg.methods == 0) cfg.methods = kAllMethods;
    if (cfg.n < 2) raise(errc::bad_dimension, "experiments require n >= 2");
    if (cfg.trials < 1) raise(errc::invalid_argument, "trials must be positive");
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
        raise(errc::bad_alpha, "alpha must lie strictly between 0 and 1");
    }
    if (cfg.s < 0.0 || cfg.s > 1.0) {
        raise(errc::invalid_argument, "missing proportion s must lie in [0, 1]");
    }

    auto trials = static_cast<std::size_t>(cfg.trials);
    std::vector<TrialRecord> records(trials);

    int threads = cfg.threads;
    if (threads <= 0) {
        unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : static_cast<int>(hw);
    }
    threads = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(threads), trials));

    if (threads <= 1) {
        for (std::size_t t = 0; t < trials; ++t) {
            records[t] = run_trial(cfg, t);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            try {
                while (true) {
                    std::size_t t = next.fetch_add(1);
                    if (t >= trials) break;
                    records[t] = run_trial(cfg, t);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Sequential reduction in trial order, so the summary does not depend on
    // scheduling.
    ExperimentSummary summary;
    summary.config = cfg;
    for (std::uint32_t m = 0; m < kMethodCount; ++m) {
        if ((cfg.methods & (1u << m)) == 0) continue;
        MethodSummary row;
        row.method = static_cast<Method>(m);
        for (const TrialRecord& record : records) {
            row.rejections += (record.rejections >> m) & 1u;
        }
        row.reject_rate = static_cast<double>(row.rejections) / static_cast<double>(trials);
        row.std_error =
            std::sqrt(row.reject_rate * (1.0 - row.reject_rate) / static_cast<double>(trials));
        summary.methods.push_back(row);
    }

    std::array<double, kCoeffCount> sums{};
    std::array<std::size_t, kCoeffCount> counts{};
    for (const TrialRecord& record : records) {
        for (std::size_t k = 0; k < kCoeffCount; ++k) {
            if (!std::isnan(record.coeffs[k])) {
                sums[k] += record.coeffs[k];
                ++counts[k];
            }
        }
    }
    auto mean_of = [&](std::size_t k) {
        return counts[k] == 0 ? std::numeric_limits<double>::quiet_NaN()
                              : sums[k] / static_cast<double>(counts[k]);
    };
    summary.means.footrule_lower = mean_of(0);
    summary.means.footrule_upper = mean_of(1);
    summary.means.footrule_ignore = mean_of(2);
    summary.means.footrule_complete = mean_of(3);
    summary.means.tau_lower = mean_of(4);
    summary.means.tau_upper = mean_of(5);
    summary.means.tau_ignore = mean_of(6);
    summary.means.tau_complete = mean_of(7);
    summary.means.rho_ignore = mean_of(8);
    summary.means.rho_complete = mean_of(9);
    return summary;
}

}  // namespace footrule
