// Command-line front-end for the footrule shared library: bounds, coefficients
// and test decisions for CSV files, plus the Monte Carlo experiment harness
// and the randomized oracle-equivalence check.
//
// Exit codes: 0 success, 2 usage or parse errors, 3 data invariant violations,
// 4 oracle mismatch.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "footrule.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitOracle = 4;

int exit_code_for(ft_status status) {
    switch (status) {
        case FT_OK:
            return kExitOk;
        case FT_ERROR_PARSE:
        case FT_ERROR_IO:
        case FT_ERROR_BAD_ALPHA:
        case FT_ERROR_BAD_RANGE:
        case FT_ERROR_INVALID_ARGUMENT:
        case FT_ERROR_NULL_ARGUMENT:
            return kExitUsage;
        default:
            return kExitData;
    }
}

[[noreturn]] void fail(ft_status status) {
    std::cerr << "error (" << ft_status_name(status) << "): " << ft_last_error_message()
              << "\n";
    std::exit(exit_code_for(status));
}

void check(ft_status status) {
    if (status != FT_OK) fail(status);
}

struct OutputOptions {
    std::string format = "csv";
    std::string path;  // empty = stdout
};

void write_output(const OutputOptions& opts, const std::string& text) {
    if (opts.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.path);
    if (!out) {
        std::cerr << "error: cannot write '" << opts.path << "'\n";
        std::exit(kExitUsage);
    }
    out << text;
}

// Single-record output: one CSV header+row, or a flat JSON object.
class Record {
public:
    void add(const std::string& key, const std::string& value) {
        keys_.push_back(key);
        values_.push_back(value);
        obj_[key] = value;
    }
    void add(const std::string& key, double value) {
        std::ostringstream s;
        s.precision(12);
        s << value;
        keys_.push_back(key);
        values_.push_back(s.str());
        obj_[key] = value;
    }
    void add(const std::string& key, std::int64_t value) {
        keys_.push_back(key);
        values_.push_back(std::to_string(value));
        obj_[key] = value;
    }

    std::string render(const std::string& format) const {
        if (format == "json") {
            return obj_.dump(2) + "\n";
        }
        std::ostringstream s;
        for (std::size_t i = 0; i < keys_.size(); ++i) {
            s << keys_[i] << (i + 1 < keys_.size() ? "," : "\n");
        }
        for (std::size_t i = 0; i < values_.size(); ++i) {
            s << values_[i] << (i + 1 < values_.size() ? "," : "\n");
        }
        return s.str();
    }

private:
    std::vector<std::string> keys_;
    std::vector<std::string> values_;
    json obj_;
};

ft_sample* load_sample(const std::string& path) {
    ft_sample* sample = nullptr;
    check(ft_sample_read_csv(path.c_str(), &sample));
    return sample;
}

std::string format_double(double value) {
    std::ostringstream s;
    s.precision(12);
    s << value;
    return s.str();
}

uint64_t resolve_seed(std::optional<uint64_t> seed) {
    if (seed.has_value()) return *seed;
    std::random_device device;
    uint64_t drawn = (static_cast<uint64_t>(device()) << 32) ^ device();
    std::cerr << "seed: " << drawn << " (pass --seed " << drawn << " to reproduce)\n";
    return drawn;
}

int threads_from_env(int requested) {
    const char* cap_str = std::getenv("FOOTRULE_THREADS");
    if (!cap_str || !*cap_str) return requested;
    char* end = nullptr;
    long cap = std::strtol(cap_str, &end, 10);
    if (end == cap_str || cap < 0) return requested;
    if (cap == 0) return requested;  // 0 = auto, no cap
    if (requested <= 0) return static_cast<int>(cap);
    return std::min(requested, static_cast<int>(cap));
}

uint32_t parse_methods(const std::string& spec) {
    if (spec.empty() || spec == "all") return FT_METHOD_ALL;
    if (spec == "no-impute") {
        uint32_t mask = 0;
        for (uint32_t i = 0; ft_method_name(i) != nullptr; ++i) {
            std::string name = ft_method_name(i);
            if (name.find("mean") == std::string::npos &&
                name.find("median") == std::string::npos &&
                name.find("hotdeck") == std::string::npos) {
                mask |= 1u << i;
            }
        }
        return mask;
    }
    uint32_t mask = 0;
    std::stringstream stream(spec);
    std::string name;
    while (std::getline(stream, name, ',')) {
        uint32_t bit = ft_method_bit_from_name(name.c_str());
        if (bit == 0) {
            std::cerr << "error: unknown method '" << name << "'; known methods:";
            for (uint32_t i = 0; ft_method_name(i) != nullptr; ++i) {
                std::cerr << ' ' << ft_method_name(i);
            }
            std::cerr << "\n";
            std::exit(kExitUsage);
        }
        mask |= bit;
    }
    return mask;
}

std::vector<double> parse_double_list(const std::string& spec) {
    std::vector<double> values;
    std::stringstream stream(spec);
    std::string item;
    while (std::getline(stream, item, ',')) {
        try {
            values.push_back(std::stod(item));
        } catch (const std::exception&) {
            std::cerr << "error: malformed number '" << item << "'\n";
            std::exit(kExitUsage);
        }
    }
    if (values.empty()) {
        std::cerr << "error: empty value list\n";
        std::exit(kExitUsage);
    }
    return values;
}

// key=value lines, '#' comments; keys match the simulate long options.
std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        std::cerr << "error: cannot open config '" << path << "'\n";
        std::exit(kExitUsage);
    }
    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            auto begin = s.find_first_not_of(" \t\r");
            auto end = s.find_last_not_of(" \t\r");
            return begin == std::string::npos ? std::string() : s.substr(begin, end - begin + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            std::cerr << "error: " << path << ":" << line_no << ": expected key=value\n";
            std::exit(kExitUsage);
        }
        entries[strip(line.substr(0, eq))] = strip(line.substr(eq + 1));
    }
    return entries;
}

int cmd_bounds(const std::string& input, const OutputOptions& out) {
    ft_sample* sample = load_sample(input);
    ft_pattern pattern{};
    check(ft_sample_pattern(sample, &pattern));
    ft_bounds_result bounds{};
    check(ft_footrule_bounds(sample, &bounds));
    ft_sample_free(sample);

    Record record;
    record.add("n", pattern.n);
    record.add("n_u", pattern.n_u);
    record.add("n_v", pattern.n_v);
    record.add("n_w", pattern.n_w);
    record.add("d_min", bounds.d_min);
    record.add("d_max", bounds.d_max);
    record.add("d_min_scaled", bounds.d_min_scaled);
    record.add("d_max_scaled", bounds.d_max_scaled);
    record.add("tau_min", bounds.tau_min);
    record.add("tau_max", bounds.tau_max);
    write_output(out, record.render(out.format));
    return kExitOk;
}

int cmd_coeffs(const std::string& input, const OutputOptions& out) {
    ft_sample* sample = load_sample(input);
    ft_coeffs_result coeffs{};
    check(ft_coefficients(sample, &coeffs));
    ft_pattern pattern{};
    check(ft_sample_pattern(sample, &pattern));
    ft_sample_free(sample);

    Record record;
    record.add("n", pattern.n);
    record.add("footrule", coeffs.footrule);
    record.add("rho_raw", coeffs.rho_raw);
    record.add("tau_raw", coeffs.tau_raw);
    record.add("footrule_scaled", coeffs.footrule_scaled);
    record.add("rho_scaled", coeffs.rho_scaled);
    record.add("tau_scaled", coeffs.tau_scaled);
    write_output(out, record.render(out.format));
    return kExitOk;
}

int cmd_test(const std::string& input, double alpha, bool reject_on_equal,
             const OutputOptions& out) {
    ft_sample* sample = load_sample(input);
    ft_test_result result{};
    check(ft_independence_test(sample, alpha, reject_on_equal ? 1 : 0, &result));
    ft_sample_free(sample);

    if (result.small_sample_warning) {
        std::cerr << "warning: n < 40; the normal approximation to the footrule null "
                     "distribution may be inaccurate\n";
    }
    const char* outcome = result.outcome == FT_REJECT ? "reject"
                          : result.outcome == FT_FAIL_ALL_INSIGNIFICANT
                              ? "fail-all-insignificant"
                              : "fail-ambiguous";
    Record record;
    record.add("alpha", alpha);
    record.add("d_min", result.bounds.d_min);
    record.add("d_max", result.bounds.d_max);
    record.add("p_min", result.p_min);
    record.add("p_max", result.p_max);
    record.add("p_at_dmin", result.p_at_dmin);
    record.add("p_at_dmax", result.p_at_dmax);
    record.add("outcome", std::string(outcome));
    write_output(out, record.render(out.format));
    return kExitOk;
}

struct SimulateArgs {
    int64_t n = 200;
    double gamma = 0.0;
    std::vector<double> s_values{0.0};
    std::string mechanism = "mcar";
    double alpha = 0.05;
    int64_t trials = 1000;
    std::optional<uint64_t> seed;
    std::string methods = "all";
    bool reject_on_equal = false;
    int threads = 0;
};

int cmd_simulate(const SimulateArgs& args, const OutputOptions& out,
                 const std::string& means_path) {
    int mechanism;
    if (args.mechanism == "mcar") {
        mechanism = FT_MCAR;
    } else if (args.mechanism == "mnar-product") {
        mechanism = FT_MNAR_PRODUCT;
    } else if (args.mechanism == "mnar-rankdiff") {
        mechanism = FT_MNAR_RANKDIFF;
    } else {
        std::cerr << "error: unknown mechanism '" << args.mechanism
                  << "' (mcar, mnar-product, mnar-rankdiff)\n";
        return kExitUsage;
    }
    uint64_t seed = resolve_seed(args.seed);
    uint32_t methods = parse_methods(args.methods);

    std::ostringstream csv;
    csv << "method,n,s,gamma,alpha,mechanism,trials,reject_rate,se\n";
    json rows = json::array();
    std::ostringstream means_csv;
    means_csv << "quantity,n,s,gamma,alpha,mechanism,trials,mean\n";

    for (double s : args.s_values) {
        ft_sim_config config{};
        config.n = args.n;
        config.gamma = args.gamma;
        config.s = s;
        config.mechanism = mechanism;
        config.alpha = args.alpha;
        config.trials = args.trials;
        config.seed = seed;
        config.methods = methods;
        config.reject_on_equal = args.reject_on_equal ? 1 : 0;
        config.threads = threads_from_env(args.threads);

        ft_sim_result* result = nullptr;
        check(ft_run_experiment(&config, &result));
        size_t rows_n = ft_sim_result_row_count(result);
        for (size_t i = 0; i < rows_n; ++i) {
            ft_sim_method_row row{};
            check(ft_sim_result_row(result, i, &row));
            csv << row.method << ',' << args.n << ',' << format_double(s) << ','
                << format_double(args.gamma) << ',' << format_double(args.alpha) << ','
                << args.mechanism << ',' << args.trials << ','
                << format_double(row.reject_rate) << ',' << format_double(row.std_error)
                << '\n';
            rows.push_back(json{{"method", row.method},
                                {"n", args.n},
                                {"s", s},
                                {"gamma", args.gamma},
                                {"alpha", args.alpha},
                                {"mechanism", args.mechanism},
                                {"trials", args.trials},
                                {"reject_rate", row.reject_rate},
                                {"se", row.std_error}});
        }
        if (!means_path.empty()) {
            ft_sim_means means{};
            check(ft_sim_result_means(result, &means));
            auto emit = [&](const char* name, double value) {
                means_csv << name << ',' << args.n << ',' << format_double(s) << ','
                          << format_double(args.gamma) << ',' << format_double(args.alpha)
                          << ',' << args.mechanism << ',' << args.trials << ','
                          << format_double(value) << '\n';
            };
            emit("footrule-lower", means.footrule_lower);
            emit("footrule-upper", means.footrule_upper);
            emit("footrule-ignore", means.footrule_ignore);
            emit("footrule-complete", means.footrule_complete);
            emit("tau-lower", means.tau_lower);
            emit("tau-upper", means.tau_upper);
            emit("tau-ignore", means.tau_ignore);
            emit("tau-complete", means.tau_complete);
            emit("rho-ignore", means.rho_ignore);
            emit("rho-complete", means.rho_complete);
        }
        ft_sim_result_free(result);
    }

    write_output(out, out.format == "json" ? rows.dump(2) + "\n" : csv.str());
    if (!means_path.empty()) {
        std::ofstream means_out(means_path);
        if (!means_out) {
            std::cerr << "error: cannot write '" << means_path << "'\n";
            return kExitUsage;
        }
        means_out << means_csv.str();
    }
    return kExitOk;
}

int cmd_oracle_check(int64_t n_min, int64_t n_max, int64_t trials,
                     std::optional<uint64_t> seed, const std::string& cases,
                     uint64_t budget) {
    uint32_t case_mask = 0;
    if (cases == "all" || cases.empty()) {
        case_mask = 0xF;
    } else {
        std::stringstream stream(cases);
        std::string item;
        while (std::getline(stream, item, ',')) {
            if (item == "1") {
                case_mask |= 1u;
            } else if (item == "2") {
                case_mask |= 2u;
            } else if (item == "3") {
                case_mask |= 4u;
            } else if (item == "general") {
                case_mask |= 8u;
            } else {
                std::cerr << "error: unknown case '" << item << "' (1, 2, 3, general, all)\n";
                return kExitUsage;
            }
        }
    }

    ft_oracle_check_config config{};
    config.n_min = n_min;
    config.n_max = n_max;
    config.trials = trials;
    config.seed = resolve_seed(seed);
    config.budget = budget;
    config.cases = case_mask;
    ft_oracle_check_report report{};
    check(ft_oracle_check(&config, &report));

    std::cout << "instances checked: " << report.instances << "\n";
    std::cout << "mismatches: " << report.mismatches << "\n";
    if (report.mismatches > 0) {
        std::cout << "first counterexample: " << report.first_mismatch << "\n";
        return kExitOracle;
    }
    std::cout << "bounds match the brute-force oracle on every instance\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Spearman footrule bounds under missing data"};
    app.require_subcommand(1);

    OutputOptions out;

    auto add_output_options = [&](CLI::App* cmd) {
        cmd->add_option("--format", out.format, "Output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("-o,--output", out.path, "Write the report to a file");
    };

    std::string input;
    auto* bounds_cmd =
        app.add_subcommand("bounds", "Exact footrule bounds and Kendall tau bounds");
    bounds_cmd->add_option("input", input, "CSV file with x,y columns")->required();
    add_output_options(bounds_cmd);

    auto* coeffs_cmd =
        app.add_subcommand("coeffs", "Rank correlation coefficients of complete data");
    coeffs_cmd->add_option("input", input, "CSV file with x,y columns")->required();
    add_output_options(coeffs_cmd);

    double alpha = 0.05;
    bool reject_on_equal = false;
    auto* test_cmd = app.add_subcommand("test", "Independence test with p-value bounds");
    test_cmd->add_option("input", input, "CSV file with x,y columns")->required();
    test_cmd->add_option("-a,--alpha", alpha, "Significance level");
    test_cmd->add_flag("--reject-on-equal", reject_on_equal,
                       "Reject when p_max equals alpha exactly");
    add_output_options(test_cmd);

    SimulateArgs sim;
    std::string s_spec = "0";
    std::string config_path;
    std::string means_path;
    std::optional<std::int64_t> cli_seed;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo rejection-rate experiments");
    sim_cmd->add_option("--config", config_path, "key=value config file; flags override");
    auto* opt_n = sim_cmd->add_option("-n,--n", sim.n, "Sample size per trial");
    auto* opt_gamma = sim_cmd->add_option("--gamma", sim.gamma, "Covariance coefficient");
    auto* opt_s = sim_cmd->add_option("--s", s_spec, "Proportion(s) of incomplete pairs");
    auto* opt_mech = sim_cmd->add_option("--mechanism", sim.mechanism,
                                         "mcar, mnar-product or mnar-rankdiff");
    auto* opt_alpha = sim_cmd->add_option("--alpha", sim.alpha, "Significance level");
    auto* opt_trials = sim_cmd->add_option("--trials", sim.trials, "Monte Carlo trials");
    auto* opt_seed = sim_cmd->add_option("--seed", cli_seed, "RNG seed (omit for random)");
    auto* opt_methods =
        sim_cmd->add_option("--methods", sim.methods, "all, no-impute, or a comma list");
    sim_cmd->add_flag("--reject-on-equal", sim.reject_on_equal,
                      "Reject when p_max equals alpha exactly");
    auto* opt_threads = sim_cmd->add_option("--threads", sim.threads, "Worker count (0 = auto)");
    sim_cmd->add_option("--means-output", means_path,
                        "Also write mean scaled coefficients/bounds to this CSV");
    add_output_options(sim_cmd);

    int64_t n_min = 4, n_max = 8, oc_trials = 1000;
    uint64_t budget = 0;
    std::string cases = "all";
    auto* oracle_cmd =
        app.add_subcommand("oracle-check", "Randomized bounds-vs-enumeration check");
    oracle_cmd->add_option("--n-min", n_min, "Smallest sample size");
    oracle_cmd->add_option("--n-max", n_max, "Largest sample size");
    oracle_cmd->add_option("--trials", oc_trials, "Random instances to check");
    oracle_cmd->add_option("--seed", cli_seed, "RNG seed (omit for random)");
    oracle_cmd->add_option("--cases", cases, "all or a comma list of 1,2,3,general");
    oracle_cmd->add_option("--budget", budget, "Enumeration budget (0 = default 1e7)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        int code = app.exit(err);
        return code == 0 ? 0 : kExitUsage;
    }

    if (bounds_cmd->parsed()) return cmd_bounds(input, out);
    if (coeffs_cmd->parsed()) return cmd_coeffs(input, out);
    if (test_cmd->parsed()) return cmd_test(input, alpha, reject_on_equal, out);
    if (sim_cmd->parsed()) {
        if (!config_path.empty()) {
            auto entries = read_config_file(config_path);
            auto take = [&](const char* key, CLI::Option* opt, auto assign) {
                auto found = entries.find(key);
                if (found == entries.end()) return;
                if (opt->count() > 0) return;  // explicit flag wins
                assign(found->second);
                entries.erase(found);
            };
            try {
                take("n", opt_n, [&](const std::string& v) { sim.n = std::stoll(v); });
                take("gamma", opt_gamma, [&](const std::string& v) { sim.gamma = std::stod(v); });
                take("s", opt_s, [&](const std::string& v) { s_spec = v; });
                take("mechanism", opt_mech, [&](const std::string& v) { sim.mechanism = v; });
                take("alpha", opt_alpha, [&](const std::string& v) { sim.alpha = std::stod(v); });
                take("trials", opt_trials,
                     [&](const std::string& v) { sim.trials = std::stoll(v); });
                take("seed", opt_seed,
                     [&](const std::string& v) { cli_seed = std::stoll(v); });
                take("methods", opt_methods, [&](const std::string& v) { sim.methods = v; });
                take("threads", opt_threads,
                     [&](const std::string& v) { sim.threads = std::stoi(v); });
            } catch (const std::exception&) {
                std::cerr << "error: malformed value in config '" << config_path << "'\n";
                return kExitUsage;
            }
            if (!entries.empty()) {
                std::cerr << "error: unknown config key '" << entries.begin()->first << "'\n";
                return kExitUsage;
            }
        }
        sim.s_values = parse_double_list(s_spec);
        if (cli_seed.has_value()) sim.seed = static_cast<uint64_t>(*cli_seed);
        return cmd_simulate(sim, out, means_path);
    }
    if (oracle_cmd->parsed()) {
        std::optional<uint64_t> seed;
        if (cli_seed.has_value()) seed = static_cast<uint64_t>(*cli_seed);
        return cmd_oracle_check(n_min, n_max, oc_trials, seed, cases, budget);
    }
    return kExitUsage;
}
