// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria cover the golden example, oracle equivalence, dispatch
// and recurrence consistency, structural invariants, desk-scale performance,
// and the Monte Carlo calibration/power checks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "footrule/bounds.hpp"
#include "footrule/inference.hpp"
#include "footrule/oracle.hpp"
#include "footrule/simulate.hpp"

using namespace footrule;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "PASS" : "FAIL") << "  " << number << ". " << name;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

PairedSample table1() {
    return PairedSample::create({7.0, 3.0, 6.0, std::nullopt, 2.0, 5.0, 4.0, 1.0},
                                {1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0});
}

PairedSample random_pattern_sample(std::mt19937_64& rng, std::size_t n, std::size_t mu,
                                   std::size_t mv, std::size_t mw) {
    std::vector<double> xv(n), yv(n);
    for (std::size_t i = 0; i < n; ++i) xv[i] = static_cast<double>(i + 1);
    std::shuffle(xv.begin(), xv.end(), rng);
    yv = xv;
    std::shuffle(yv.begin(), yv.end(), rng);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);

    PairedSample s;
    s.x.assign(xv.begin(), xv.end());
    s.y.assign(yv.begin(), yv.end());
    std::size_t cursor = 0;
    for (std::size_t k = 0; k < mu && cursor < n; ++k) s.x[order[cursor++]].reset();
    for (std::size_t k = 0; k < mv && cursor < n; ++k) s.y[order[cursor++]].reset();
    for (std::size_t k = 0; k < mw && cursor < n; ++k) {
        s.x[order[cursor]].reset();
        s.y[order[cursor]].reset();
        ++cursor;
    }
    return s;
}

// Case kinds: 0 = I, 1 = II, 2 = III, 3 = general.
PairedSample draw_case_instance(std::mt19937_64& rng, int kind, std::size_t n_lo,
                                std::size_t n_hi, std::uint64_t count_cap) {
    while (true) {
        std::size_t n = n_lo + rng() % (n_hi - n_lo + 1);
        std::size_t mu = 0, mv = 0, mw = 0;
        switch (kind) {
            case 0:
                mu = 1 + rng() % 3;
                break;
            case 1:
                mu = 1 + rng() % 2;
                mv = 1 + rng() % 2;
                break;
            case 2:
                mw = 1 + rng() % 2;
                break;
            default:
                mu = 1 + rng() % 2;
                mv = 1;
                mw = 1;
                break;
        }
        if (mu + mv + mw >= n) continue;
        PairedSample s = random_pattern_sample(rng, n, mu, mv, mw);
        if (enumeration_count(s) <= count_cap) return s;
    }
}

PairedSample random_completion(const PairedSample& s, std::mt19937_64& rng) {
    PairedSample imputed = s;
    std::uniform_real_distribution<double> jitter(0.0, 0.999);
    double base = 1000.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!imputed.x[i].has_value()) imputed.x[i] = base + static_cast<double>(i) + jitter(rng);
        if (!imputed.y[i].has_value()) imputed.y[i] = base + static_cast<double>(i) + jitter(rng);
    }
    return imputed;
}

std::int64_t footrule_of_full(const PairedSample& s) {
    std::vector<double> xv, yv;
    for (std::size_t i = 0; i < s.size(); ++i) {
        xv.push_back(*s.x[i]);
        yv.push_back(*s.y[i]);
    }
    return footrule_distance(rank_vector(xv), rank_vector(yv));
}

void criterion_1_golden() {
    PairedSample s = table1();
    bool pass = lower_bound(s) == 24 && upper_bound_general(s) == 28;

    // scan candidates at r = 0, 1
    auto scan = detail::case1_scan_values(s);
    pass = pass && scan == std::vector<std::int64_t>{28, 26};

    // enumerated placements reproduce the supplementary footrule column
    std::vector<std::int64_t> column;
    enumerate_rank_pairs(s, {}, [&](const RankVector& rx, const RankVector& ry) {
        column.push_back(footrule_distance(rx, ry));
    });
    pass = pass && column == std::vector<std::int64_t>{26, 26, 26, 24, 26, 28, 28, 28};

    std::vector<std::int64_t> multiset = column;
    std::sort(multiset.begin(), multiset.end());
    pass = pass && multiset == std::vector<std::int64_t>{24, 26, 26, 26, 26, 28, 28, 28};
    report(1, "Table-1 golden values (24/28 and the candidate column)", pass);
}

void criterion_2_oracle_equivalence() {
    std::mt19937_64 rng(20240501);
    const int per_case = 250;
    bool pass = true;
    std::string detail;
    auto start = std::chrono::steady_clock::now();
    for (int kind = 0; kind < 4 && pass; ++kind) {
        for (int rep = 0; rep < per_case && pass; ++rep) {
            PairedSample s = draw_case_instance(rng, kind, 4, 8, 200000);
            FootruleBounds fast = bounds(s);
            FootruleBounds truth = brute_force_bounds(s);
            if (fast.d_min != truth.d_min || fast.d_max != truth.d_max) {
                pass = false;
                std::ostringstream msg;
                msg << "mismatch at case " << kind << ": fast (" << fast.d_min << ","
                    << fast.d_max << ") vs oracle (" << truth.d_min << "," << truth.d_max
                    << ")";
                detail = msg.str();
            }
        }
    }
    auto elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start);
    std::ostringstream timing;
    timing << "1000 instances in " << elapsed.count() << " s";
    pass = pass && elapsed.count() <= 60.0;
    report(2, "oracle equivalence on 1000 instances, n in 4..8",
           pass, detail.empty() ? timing.str() : detail);
}

void criterion_3_dispatch_consistency() {
    std::mt19937_64 rng(777);
    bool pass = true;
    for (int kind = 0; kind < 3 && pass; ++kind) {
        for (int rep = 0; rep < 500 && pass; ++rep) {
            std::size_t n = 4 + rng() % 27;
            std::size_t mu = kind == 0 ? 1 + rng() % 3 : 0;
            std::size_t mv = 0;
            std::size_t mw = kind == 2 ? 1 + rng() % 3 : 0;
            if (kind == 1) {
                mu = 1 + rng() % 3;
                mv = 1 + rng() % 3;
            }
            if (mu + mv + mw >= n) continue;
            PairedSample s = random_pattern_sample(rng, n, mu, mv, mw);
            std::int64_t specialized = kind == 0   ? upper_bound_case1(s)
                                       : kind == 1 ? upper_bound_case2(s)
                                                   : upper_bound_case3(s);
            if (upper_bound_general(s) != specialized) pass = false;
            // the triple-sweep machinery itself, without the dispatch
            detail::ScanSetup setup = detail::make_scan_setup(s, false);
            if (detail::general_sweep(setup).best != specialized) pass = false;
        }
    }
    report(3, "dispatch consistency: general vs specialized on 500 instances per case", pass);
}

void criterion_4_recurrence_vs_closed_form() {
    std::mt19937_64 rng(888);
    bool pass = true;
    for (int rep = 0; rep < 200 && pass; ++rep) {
        std::size_t n = 2 + rng() % 199;  // up to 200
        std::size_t mu = 1 + rng() % std::min<std::size_t>(n - 1, 40);
        PairedSample s = random_pattern_sample(rng, n, mu, 0, 0);
        auto scan = detail::case1_scan_values(s);
        for (std::size_t r = 0; r < scan.size(); ++r) {
            if (scan[r] != candidate_value_case1(s, static_cast<std::int64_t>(r))) {
                pass = false;
                break;
            }
        }
    }
    report(4, "Case-I scan values equal the closed-form candidates (200 instances)", pass);
}

void criterion_5_structural_invariants() {
    std::mt19937_64 rng(999);
    bool pass = true;
    for (int rep = 0; rep < 10000 && pass; ++rep) {
        std::size_t n = 2 + rng() % 39;
        std::size_t mu = rng() % 3;
        std::size_t mv = rng() % 3;
        std::size_t mw = rng() % 3;
        if (mu + mv + mw > n) continue;
        PairedSample s = random_pattern_sample(rng, n, mu, mv, mw);
        auto nn = static_cast<std::int64_t>(n);

        FootruleBounds fb = bounds(s);
        if (fb.d_min % 2 != 0 || fb.d_max % 2 != 0) pass = false;
        if (fb.d_min < 0 || fb.d_min > fb.d_max || fb.d_max > max_footrule(nn)) pass = false;

        // Diaconis-Graham sandwich on a full completion
        PairedSample full = random_completion(s, rng);
        std::vector<double> xv, yv;
        for (std::size_t i = 0; i < n; ++i) {
            xv.push_back(*full.x[i]);
            yv.push_back(*full.y[i]);
        }
        RankVector rx = rank_vector(xv);
        RankVector ry = rank_vector(yv);
        std::int64_t d_full = footrule_distance(rx, ry);
        std::int64_t tau_full = kendall_tau_raw(rx, ry);
        if (!(tau_full <= d_full && d_full <= 2 * tau_full)) pass = false;

        // p-value containment for random imputations
        PValueBounds pb = pvalue_bounds(fb, nn);
        for (int imp = 0; imp < 10 && pass; ++imp) {
            std::int64_t d = footrule_of_full(random_completion(s, rng));
            double p = footrule_pvalue(d, nn);
            if (p < pb.p_min - 1e-12 || p > pb.p_max + 1e-12) pass = false;
        }

        // revelation monotonicity on one revealed entry
        if (mu + mv + mw > 0) {
            PairedSample revealed = s;
            bool done = false;
            for (std::size_t i = 0; i < n && !done; ++i) {
                if (!revealed.x[i].has_value()) {
                    revealed.x[i] = 2000.0 + static_cast<double>(rng() % 997);
                    done = true;
                } else if (!revealed.y[i].has_value()) {
                    revealed.y[i] = 2000.0 + static_cast<double>(rng() % 997);
                    done = true;
                }
            }
            if (done) {
                FootruleBounds fb2 = bounds(revealed);
                if (fb2.d_min < fb.d_min || fb2.d_max > fb.d_max) pass = false;
            }
        }
    }
    report(5, "structural invariants on 10000 random instances", pass);
}

void criterion_6_performance() {
    std::mt19937_64 rng(31337);

    // Case I: n = 1e5, m1 = 1e4
    std::size_t n1 = 100000, m1 = 10000;
    PairedSample case1 = random_pattern_sample(rng, n1, m1, 0, 0);
    auto start = std::chrono::steady_clock::now();
    std::int64_t v1 = upper_bound_case1(case1);
    double t1 = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    // General: n = 1e4, m1 = m2 = m3 = 100 (about 1e6 grid cells)
    std::size_t n2 = 10000;
    PairedSample general = random_pattern_sample(rng, n2, 100, 100, 100);
    start = std::chrono::steady_clock::now();
    std::int64_t v2 = upper_bound_general(general);
    double t2 = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool pass = t1 < 1.0 && t2 < 2.0 && v1 > 0 && v2 > 0;
    std::ostringstream detail;
    detail << "case I " << t1 << " s, general " << t2 << " s";
    report(6, "performance: case-I n=1e5/m1=1e4 < 1 s, general n=1e4/m=100 < 2 s", pass,
           detail.str());
}

std::uint32_t figure3_methods() {
    std::uint32_t mask = 0;
    for (Method m : {Method::proposed, Method::footrule_ignore, Method::footrule_complete,
                     Method::tau_ignore, Method::tau_complete, Method::rho_ignore,
                     Method::rho_complete}) {
        mask |= 1u << static_cast<std::uint32_t>(m);
    }
    return mask;
}

double rate_of(const ExperimentSummary& summary, Method m) {
    for (const MethodSummary& row : summary.methods) {
        if (row.method == m) return row.reject_rate;
    }
    return -1.0;
}

void criterion_7_null_calibration() {
    const double limit = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 1000.0);
    bool pass = true;
    std::ostringstream detail;
    auto start = std::chrono::steady_clock::now();
    for (double s : {0.0, 0.1}) {
        SimConfig cfg;
        cfg.n = 200;
        cfg.gamma = 0.0;
        cfg.s = s;
        cfg.mechanism = Mechanism::mcar;
        cfg.alpha = 0.05;
        cfg.trials = 1000;
        cfg.seed = 17;
        cfg.methods = figure3_methods();
        ExperimentSummary summary = run_experiment(cfg);
        for (const MethodSummary& row : summary.methods) {
            detail << method_name(row.method) << "@s=" << s << "=" << row.reject_rate << " ";
            if (row.reject_rate > limit) pass = false;
        }
        // the conservative test never rejects more often than ignoring
        if (rate_of(summary, Method::proposed) > rate_of(summary, Method::footrule_ignore)) {
            pass = false;
        }
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    pass = pass && elapsed <= 300.0;
    report(7, "null calibration under MCAR (all rates <= 0.0707)", pass, detail.str());
}

void criterion_8_mnar_separation() {
    SimConfig cfg;
    cfg.n = 200;
    cfg.gamma = 0.0;
    cfg.s = 0.10;
    cfg.mechanism = Mechanism::mnar_product;
    cfg.alpha = 0.05;
    cfg.trials = 1000;
    cfg.seed = 19;
    cfg.methods = kAllMethods;
    ExperimentSummary summary = run_experiment(cfg);

    const double proposed_limit = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / 1000.0);
    bool pass = true;
    std::ostringstream detail;
    auto need_at_least = [&](Method m, double floor_rate) {
        double rate = rate_of(summary, m);
        detail << method_name(m) << "=" << rate << " ";
        if (rate < floor_rate) pass = false;
    };
    need_at_least(Method::footrule_ignore, 0.15);
    need_at_least(Method::tau_ignore, 0.15);
    need_at_least(Method::rho_ignore, 0.15);
    for (Method m : {Method::footrule_mean, Method::footrule_median, Method::footrule_hotdeck,
                     Method::tau_mean, Method::tau_median, Method::tau_hotdeck,
                     Method::rho_mean, Method::rho_median, Method::rho_hotdeck}) {
        need_at_least(m, 0.10);
    }
    double proposed = rate_of(summary, Method::proposed);
    detail << "proposed=" << proposed;
    if (proposed > proposed_limit) pass = false;
    report(8, "MNAR type-I separation (ignore >= 0.15, impute >= 0.10, proposed controlled)",
           pass, detail.str());
}

void criterion_9_power_profile() {
    SimConfig cfg;
    cfg.n = 200;
    cfg.gamma = 0.5;
    cfg.mechanism = Mechanism::mnar_product;
    cfg.alpha = 0.05;
    cfg.trials = 1000;
    cfg.seed = 23;
    cfg.methods = 1u << static_cast<std::uint32_t>(Method::proposed);

    cfg.s = 0.02;
    ExperimentSummary near_full = run_experiment(cfg);
    double power_002 = rate_of(near_full, Method::proposed);

    cfg.s = 0.25;
    ExperimentSummary heavy = run_experiment(cfg);
    std::int64_t rejections_025 = heavy.methods.at(0).rejections;

    bool pass = power_002 >= 0.8 && rejections_025 == 0;
    std::ostringstream detail;
    detail << "power(s=0.02)=" << power_002 << ", rejections(s=0.25)=" << rejections_025;
    report(9, "power profile under MNAR (>= 0.8 at s=0.02, exactly 0 at s=0.25)", pass,
           detail.str());
}

void criterion_10_tau_containment() {
    std::mt19937_64 rng(4242);
    bool pass = true;
    for (int rep = 0; rep < 300 && pass; ++rep) {
        PairedSample s = draw_case_instance(rng, rep % 4, 4, 7, 20000);
        auto nn = static_cast<std::int64_t>(s.size());
        TauBounds tb = tau_bounds(bounds(s), nn);
        enumerate_rank_pairs(s, {}, [&](const RankVector& rx, const RankVector& ry) {
            auto tau = static_cast<double>(kendall_tau_raw(rx, ry));
            if (tau < tb.tau_min - 1e-9 || tau > tb.tau_max + 1e-9) pass = false;
        });
    }
    report(10, "Kendall tau of every enumerated imputation lies in the derived bounds", pass);
}

}  // namespace

int main() {
    criterion_1_golden();
    criterion_2_oracle_equivalence();
    criterion_3_dispatch_consistency();
    criterion_4_recurrence_vs_closed_form();
    criterion_5_structural_invariants();
    criterion_6_performance();
    criterion_7_null_calibration();
    criterion_8_mnar_separation();
    criterion_9_power_profile();
    criterion_10_tau_containment();

    if (g_failures == 0) {
        std::cout << "all acceptance criteria passed" << std::endl;
        return 0;
    }
    std::cout << g_failures << " acceptance criteria failed" << std::endl;
    return 1;
}
