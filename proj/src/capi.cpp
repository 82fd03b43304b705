#include <algorithm>
#include <cstdio>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <random>
#include <string>

#include "footrule.h"
#include "footrule/bounds.hpp"
#include "footrule/csv.hpp"
#include "footrule/inference.hpp"
#include "footrule/oracle.hpp"
#include "footrule/simulate.hpp"

namespace {

thread_local std::string g_last_error;

ft_status status_of(footrule::errc code) {
    using footrule::errc;
    switch (code) {
        case errc::invalid_argument:
            return FT_ERROR_INVALID_ARGUMENT;
        case errc::duplicate_value:
            return FT_ERROR_DUPLICATE_VALUE;
        case errc::length_mismatch:
            return FT_ERROR_LENGTH_MISMATCH;
        case errc::wrong_case:
            return FT_ERROR_WRONG_CASE;
        case errc::budget_exceeded:
            return FT_ERROR_BUDGET_EXCEEDED;
        case errc::bad_dimension:
            return FT_ERROR_BAD_DIMENSION;
        case errc::bad_alpha:
            return FT_ERROR_BAD_ALPHA;
        case errc::bad_range:
            return FT_ERROR_BAD_RANGE;
        case errc::parse:
            return FT_ERROR_PARSE;
        case errc::io:
            return FT_ERROR_IO;
        case errc::all_missing:
            return FT_ERROR_ALL_MISSING;
    }
    return FT_ERROR_INTERNAL;
}

template <typename Fn>
ft_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return FT_OK;
    } catch (const footrule::Error& err) {
        g_last_error = err.what();
        return status_of(err.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return FT_ERROR_INTERNAL;
    } catch (const std::exception& err) {
        g_last_error = err.what();
        return FT_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return FT_ERROR_INTERNAL;
    }
}

ft_status null_argument(const char* what) {
    g_last_error = std::string(what) + " must not be NULL";
    return FT_ERROR_NULL_ARGUMENT;
}

void fill_bounds(const footrule::PairedSample& sample, const footrule::FootruleBounds& fb,
                 ft_bounds_result* out) {
    auto n = static_cast<std::int64_t>(sample.size());
    out->d_min = fb.d_min;
    out->d_max = fb.d_max;
    if (n >= 2) {
        out->d_min_scaled = footrule::scale_footrule(fb.d_min, n);
        out->d_max_scaled = footrule::scale_footrule(fb.d_max, n);
    } else {
        out->d_min_scaled = 1.0;
        out->d_max_scaled = 1.0;
    }
    footrule::TauBounds tb = footrule::tau_bounds(fb, n);
    out->tau_min = tb.tau_min;
    out->tau_max = tb.tau_max;
}

}  // namespace

struct ft_sample {
    footrule::PairedSample data;
};

struct ft_sim_result {
    footrule::ExperimentSummary summary;
};

extern "C" {

const char* ft_status_name(ft_status status) {
    switch (status) {
        case FT_OK:
            return "ok";
        case FT_ERROR_NULL_ARGUMENT:
            return "null-argument";
        case FT_ERROR_INVALID_ARGUMENT:
            return "invalid-argument";
        case FT_ERROR_DUPLICATE_VALUE:
            return "duplicate-value";
        case FT_ERROR_LENGTH_MISMATCH:
            return "length-mismatch";
        case FT_ERROR_WRONG_CASE:
            return "wrong-case";
        case FT_ERROR_BUDGET_EXCEEDED:
            return "budget-exceeded";
        case FT_ERROR_BAD_DIMENSION:
            return "bad-dimension";
        case FT_ERROR_BAD_ALPHA:
            return "bad-alpha";
        case FT_ERROR_BAD_RANGE:
            return "bad-range";
        case FT_ERROR_PARSE:
            return "parse-error";
        case FT_ERROR_IO:
            return "io-error";
        case FT_ERROR_ALL_MISSING:
            return "all-missing";
        case FT_ERROR_INTERNAL:
            return "internal-error";
    }
    return "unknown";
}

const char* ft_last_error_message(void) {
    return g_last_error.c_str();
}

ft_status ft_sample_create(const double* x, const uint8_t* x_observed, const double* y,
                           const uint8_t* y_observed, size_t n, ft_sample** out) {
    if (!x || !x_observed || !y || !y_observed) return null_argument("data arrays");
    if (!out) return null_argument("out");
    return guarded([&] {
        std::vector<std::optional<double>> xs(n), ys(n);
        for (size_t i = 0; i < n; ++i) {
            if (x_observed[i]) xs[i] = x[i];
            if (y_observed[i]) ys[i] = y[i];
        }
        auto sample = std::make_unique<ft_sample>(
            ft_sample{footrule::PairedSample::create(std::move(xs), std::move(ys))});
        *out = sample.release();
    });
}

ft_status ft_sample_read_csv(const char* path, ft_sample** out) {
    if (!path) return null_argument("path");
    if (!out) return null_argument("out");
    return guarded([&] {
        auto sample =
            std::make_unique<ft_sample>(ft_sample{footrule::read_paired_csv_file(path)});
        *out = sample.release();
    });
}

ft_status ft_sample_read_csv_string(const char* text, ft_sample** out) {
    if (!text) return null_argument("text");
    if (!out) return null_argument("out");
    return guarded([&] {
        auto sample =
            std::make_unique<ft_sample>(ft_sample{footrule::read_paired_csv_string(text)});
        *out = sample.release();
    });
}

void ft_sample_free(ft_sample* sample) {
    delete sample;
}

ft_status ft_sample_pattern(const ft_sample* sample, ft_pattern* out) {
    if (!sample) return null_argument("sample");
    if (!out) return null_argument("out");
    return guarded([&] {
        footrule::MissingPattern pattern = footrule::classify_pattern(sample->data);
        out->n = static_cast<int64_t>(sample->data.size());
        out->n_u = static_cast<int64_t>(pattern.u.size());
        out->n_v = static_cast<int64_t>(pattern.v.size());
        out->n_w = static_cast<int64_t>(pattern.w.size());
        out->n_complete = static_cast<int64_t>(pattern.complete.size());
        switch (pattern.missing_case) {
            case footrule::MissingCase::case_i:
                out->missing_case = 1;
                break;
            case footrule::MissingCase::case_ii:
                out->missing_case = 2;
                break;
            case footrule::MissingCase::case_iii:
                out->missing_case = 3;
                break;
            case footrule::MissingCase::general:
                out->missing_case = 0;
                break;
        }
    });
}

ft_status ft_footrule_bounds(const ft_sample* sample, ft_bounds_result* out) {
    if (!sample) return null_argument("sample");
    if (!out) return null_argument("out");
    return guarded([&] {
        footrule::FootruleBounds fb = footrule::bounds(sample->data);
        fill_bounds(sample->data, fb, out);
    });
}

ft_status ft_brute_force_bounds(const ft_sample* sample, uint64_t max_candidates,
                                ft_bounds_result* out) {
    if (!sample) return null_argument("sample");
    if (!out) return null_argument("out");
    return guarded([&] {
        footrule::EnumerationBudget budget;
        if (max_candidates != 0) budget.max_candidates = max_candidates;
        footrule::FootruleBounds fb = footrule::brute_force_bounds(sample->data, budget);
        fill_bounds(sample->data, fb, out);
    });
}

ft_status ft_coefficients(const ft_sample* sample, ft_coeffs_result* out) {
    if (!sample) return null_argument("sample");
    if (!out) return null_argument("out");
    return guarded([&] {
        std::vector<double> xv, yv;
        for (std::size_t i = 0; i < sample->data.size(); ++i) {
            if (!sample->data.x[i].has_value() || !sample->data.y[i].has_value()) {
                footrule::raise(footrule::errc::all_missing,
                                "coefficients require a fully observed sample");
            }
            xv.push_back(*sample->data.x[i]);
            yv.push_back(*sample->data.y[i]);
        }
        footrule::RankVector rx = footrule::rank_vector(xv);
        footrule::RankVector ry = footrule::rank_vector(yv);
        footrule::CoefficientSet cs = footrule::coefficient_set(rx, ry);
        out->footrule = cs.footrule;
        out->rho_raw = cs.rho_raw;
        out->tau_raw = cs.tau_raw;
        out->footrule_scaled = cs.footrule_scaled;
        out->rho_scaled = cs.rho_scaled;
        out->tau_scaled = cs.tau_scaled;
    });
}

ft_status ft_independence_test(const ft_sample* sample, double alpha, int reject_on_equal,
                               ft_test_result* out) {
    if (!sample) return null_argument("sample");
    if (!out) return null_argument("out");
    return guarded([&] {
        auto n = static_cast<std::int64_t>(sample->data.size());
        footrule::FootruleBounds fb = footrule::bounds(sample->data);
        footrule::PValueBounds pv = footrule::pvalue_bounds(fb, n);
        footrule::TestOutcome outcome = footrule::decide(pv, alpha, reject_on_equal != 0);
        fill_bounds(sample->data, fb, &out->bounds);
        out->p_min = pv.p_min;
        out->p_max = pv.p_max;
        out->p_at_dmin = pv.p_at_dmin;
        out->p_at_dmax = pv.p_at_dmax;
        switch (outcome.decision) {
            case footrule::TestDecision::reject:
                out->outcome = FT_REJECT;
                break;
            case footrule::TestDecision::fail_all_insignificant:
                out->outcome = FT_FAIL_ALL_INSIGNIFICANT;
                break;
            case footrule::TestDecision::fail_ambiguous:
                out->outcome = FT_FAIL_AMBIGUOUS;
                break;
        }
        out->small_sample_warning = n < 40 ? 1 : 0;
    });
}

ft_status ft_rank_vector(const double* values, size_t n, int64_t* ranks_out) {
    if (!values) return null_argument("values");
    if (!ranks_out) return null_argument("ranks_out");
    return guarded([&] {
        footrule::RankVector ranks = footrule::rank_vector(std::span<const double>(values, n));
        std::copy(ranks.begin(), ranks.end(), ranks_out);
    });
}

const char* ft_method_name(uint32_t method_index) {
    if (method_index >= footrule::kMethodCount) return nullptr;
    return footrule::method_name(static_cast<footrule::Method>(method_index));
}

uint32_t ft_method_bit_from_name(const char* name) {
    if (!name) return 0;
    return footrule::method_bit_from_name(name);
}

ft_status ft_run_experiment(const ft_sim_config* config, ft_sim_result** out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    return guarded([&] {
        footrule::SimConfig cfg;
        cfg.n = config->n;
        cfg.gamma = config->gamma;
        cfg.s = config->s;
        switch (config->mechanism) {
            case FT_MCAR:
                cfg.mechanism = footrule::Mechanism::mcar;
                break;
            case FT_MNAR_PRODUCT:
                cfg.mechanism = footrule::Mechanism::mnar_product;
                break;
            case FT_MNAR_RANKDIFF:
                cfg.mechanism = footrule::Mechanism::mnar_rankdiff;
                break;
            default:
                footrule::raise(footrule::errc::invalid_argument, "unknown mechanism");
        }
        cfg.alpha = config->alpha;
        cfg.trials = config->trials;
        cfg.seed = config->seed;
        cfg.methods = config->methods == 0 ? footrule::kAllMethods : config->methods;
        cfg.reject_on_equal = config->reject_on_equal != 0;
        cfg.threads = config->threads;
        auto result =
            std::make_unique<ft_sim_result>(ft_sim_result{footrule::run_experiment(cfg)});
        *out = result.release();
    });
}

size_t ft_sim_result_row_count(const ft_sim_result* result) {
    return result ? result->summary.methods.size() : 0;
}

ft_status ft_sim_result_row(const ft_sim_result* result, size_t index, ft_sim_method_row* out) {
    if (!result) return null_argument("result");
    if (!out) return null_argument("out");
    if (index >= result->summary.methods.size()) {
        g_last_error = "row index out of range";
        return FT_ERROR_BAD_RANGE;
    }
    const footrule::MethodSummary& row = result->summary.methods[index];
    std::snprintf(out->method, sizeof(out->method), "%s", footrule::method_name(row.method));
    out->rejections = row.rejections;
    out->reject_rate = row.reject_rate;
    out->std_error = row.std_error;
    return FT_OK;
}

ft_status ft_sim_result_means(const ft_sim_result* result, ft_sim_means* out) {
    if (!result) return null_argument("result");
    if (!out) return null_argument("out");
    const footrule::CoefficientMeans& means = result->summary.means;
    out->footrule_lower = means.footrule_lower;
    out->footrule_upper = means.footrule_upper;
    out->footrule_ignore = means.footrule_ignore;
    out->footrule_complete = means.footrule_complete;
    out->tau_lower = means.tau_lower;
    out->tau_upper = means.tau_upper;
    out->tau_ignore = means.tau_ignore;
    out->tau_complete = means.tau_complete;
    out->rho_ignore = means.rho_ignore;
    out->rho_complete = means.rho_complete;
    return FT_OK;
}

void ft_sim_result_free(ft_sim_result* result) {
    delete result;
}

ft_status ft_oracle_check(const ft_oracle_check_config* config, ft_oracle_check_report* out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    return guarded([&] {
        if (config->n_min < 1 || config->n_max < config->n_min) {
            footrule::raise(footrule::errc::invalid_argument,
                            "need 1 <= n_min <= n_max for the oracle check");
        }
        if (config->trials < 1) {
            footrule::raise(footrule::errc::invalid_argument, "trials must be positive");
        }
        footrule::EnumerationBudget budget;
        if (config->budget != 0) budget.max_candidates = config->budget;
        uint32_t cases = config->cases == 0 ? 0xFu : config->cases;

        out->instances = 0;
        out->mismatches = 0;
        out->first_mismatch[0] = '\0';

        std::mt19937_64 rng(config->seed);
        std::uniform_int_distribution<std::int64_t> pick_n(config->n_min, config->n_max);
        std::uniform_int_distribution<int> pick_case(0, 3);

        for (std::int64_t t = 0; t < config->trials; ++t) {
            int which;
            do {
                which = pick_case(rng);
            } while ((cases & (1u << which)) == 0);

            footrule::PairedSample sample;
            int attempts = 0;
            while (true) {
                if (++attempts > 1000) {
                    footrule::raise(footrule::errc::budget_exceeded,
                                    "cannot draw an instance within the enumeration budget");
                }
                auto n = static_cast<std::size_t>(pick_n(rng));
                // Rank structure is all that matters; random permutations of
                // 1..n give distinct values and uniform rank configurations.
                std::vector<double> xv(n), yv(n);
                for (std::size_t i = 0; i < n; ++i) xv[i] = static_cast<double>(i + 1);
                std::shuffle(xv.begin(), xv.end(), rng);
                yv = xv;
                std::shuffle(yv.begin(), yv.end(), rng);
                std::vector<std::size_t> order(n);
                for (std::size_t i = 0; i < n; ++i) order[i] = i;
                std::shuffle(order.begin(), order.end(), rng);

                std::vector<std::optional<double>> xs(xv.begin(), xv.end());
                std::vector<std::optional<double>> ys(yv.begin(), yv.end());
                std::uniform_int_distribution<int> count(1, 2);
                std::size_t cursor = 0;
                auto drop = [&](int kind) {  // 0: x, 1: y, 2: both
                    if (cursor >= n) return;
                    std::size_t i = order[cursor++];
                    if (kind == 0 || kind == 2) xs[i].reset();
                    if (kind == 1 || kind == 2) ys[i].reset();
                };
                switch (which) {
                    case 0:  // Case I
                        for (int k = count(rng); k > 0; --k) drop(0);
                        break;
                    case 1:  // Case II
                        drop(0);
                        drop(1);
                        if (count(rng) == 2) drop(count(rng) == 1 ? 0 : 1);
                        break;
                    case 2:  // Case III
                        for (int k = count(rng); k > 0; --k) drop(2);
                        break;
                    default:  // general
                        drop(0);
                        drop(1);
                        drop(2);
                        break;
                }
                sample.x = std::move(xs);
                sample.y = std::move(ys);
                if (footrule::enumeration_count(sample) <= budget.max_candidates) break;
            }
            ++out->instances;
            footrule::FootruleBounds fast = footrule::bounds(sample);
            footrule::FootruleBounds truth = footrule::brute_force_bounds(sample, budget);
            if (fast.d_min != truth.d_min || fast.d_max != truth.d_max) {
                ++out->mismatches;
                if (out->first_mismatch[0] == '\0') {
                    std::size_t n = sample.size();
                    std::string desc = "case=" + std::to_string(which) +
                                       " n=" + std::to_string(n) + " x=[";
                    for (std::size_t i = 0; i < n; ++i) {
                        desc += sample.x[i] ? std::to_string(static_cast<int>(*sample.x[i]))
                                            : "na";
                        desc += i + 1 < n ? "," : "] y=[";
                    }
                    for (std::size_t i = 0; i < n; ++i) {
                        desc += sample.y[i] ? std::to_string(static_cast<int>(*sample.y[i]))
                                            : "na";
                        desc += i + 1 < n ? "," : "]";
                    }
                    desc += " fast=(" + std::to_string(fast.d_min) + "," +
                            std::to_string(fast.d_max) + ") oracle=(" +
                            std::to_string(truth.d_min) + "," + std::to_string(truth.d_max) +
                            ")";
                    std::snprintf(out->first_mismatch, sizeof(out->first_mismatch), "%s",
                                  desc.c_str());
                }
            }
        }
    });
}

}  // extern "C"
