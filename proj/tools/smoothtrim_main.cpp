// smoothtrim command-line tool: point estimates, variance estimates,
// confidence intervals, Monte Carlo studies and variance-minimizing
// parameter selection over single-column CSV data.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "smoothtrim/distributions.hpp"
#include "smoothtrim/elikelihood.hpp"
#include "smoothtrim/error.hpp"
#include "smoothtrim/estimators.hpp"
#include "smoothtrim/intervals.hpp"
#include "smoothtrim/io.hpp"
#include "smoothtrim/sample.hpp"
#include "smoothtrim/studies.hpp"
#include "smoothtrim/variance.hpp"
#include "smoothtrim/weights.hpp"

namespace {

using nlohmann::json;
using namespace smoothtrim;

std::uint64_t seed_fallback() {
    const char* env = std::getenv("SMOOTHTRIM_SEED");
    if (!env || !*env) return 12345;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
        throw ParameterError("SMOOTHTRIM_SEED must be an unsigned integer");
    return static_cast<std::uint64_t>(v);
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(path);
    if (!out) throw ParameterError("cannot open output file '" + path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

void emit(const std::string& format, const std::string& path, const std::string& csv,
          const json& j) {
    if (format == "csv")
        write_text(path, csv);
    else
        write_text(path, j.dump(2));
}

std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            if (used != token.size()) throw ParameterError("");
        } catch (const std::exception&) {
            throw ParameterError(std::string("cannot parse ") + what + " list entry '" + token +
                                 "'");
        }
    }
    if (out.empty()) throw ParameterError(std::string("empty ") + what + " list");
    return out;
}

// "a:g" pairs for --stm
std::vector<WeightSpec> parse_stm_pairs(const std::vector<std::string>& pairs) {
    std::vector<WeightSpec> out;
    for (const auto& p : pairs) {
        const auto colon = p.find(':');
        if (colon == std::string::npos)
            throw ParameterError("--stm expects alpha:gamma, got '" + p + "'");
        try {
            out.push_back(WeightSpec::generalized(std::stod(p.substr(0, colon)),
                                                  std::stod(p.substr(colon + 1))));
        } catch (const std::invalid_argument&) {
            throw ParameterError("--stm expects alpha:gamma, got '" + p + "'");
        }
    }
    return out;
}

std::vector<CIMethod> parse_methods(const std::string& list) {
    std::vector<CIMethod> out;
    std::stringstream ss(list);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token == "normal")
            out.push_back(CIMethod::NormalApprox);
        else if (token == "el")
            out.push_back(CIMethod::ELMethod);
        else if (token == "boot")
            out.push_back(CIMethod::BootstrapPercentile);
        else if (token == "t")
            out.push_back(CIMethod::StudentT);
        else if (!token.empty())
            throw ParameterError("unknown CI method '" + token + "'");
    }
    if (out.empty()) throw ParameterError("empty method list");
    return out;
}

json ci_to_json(const ConfidenceInterval& ci, const std::string& estimator) {
    return {{"estimator", estimator}, {"method", method_name(ci.method)},
            {"level", ci.level},      {"point", ci.point},
            {"lower", ci.lower},      {"upper", ci.upper},
            {"clipped", ci.clipped}};
}

std::string ci_to_csv(const ConfidenceInterval& ci, const std::string& estimator) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "estimator,method,level,point,lower,upper,clipped\n%s,%s,%.10g,%.10g,%.10g,%.10g,%d\n",
                  estimator.c_str(), method_name(ci.method), ci.level, ci.point, ci.lower,
                  ci.upper, ci.clipped ? 1 : 0);
    return buf;
}

struct CommonArgs {
    std::string input;
    std::string output;
    std::string format;
    double alpha = 0.1;
    double gamma = 0.0;
    bool has_gamma = false;
};

int cmd_estimate(const CommonArgs& args) {
    const SortedSample sample(read_numeric_csv_file(args.input));
    json j{{"n", sample.size()}, {"alpha", args.alpha}};
    std::ostringstream csv;
    csv << "statistic,value\n";
    const auto tm = trimmed_mean(sample, args.alpha);
    const auto wm = winsorized_mean(sample, args.alpha);
    j["trimmed_mean"] = tm.value;
    j["winsorized_mean"] = wm.value;
    csv << "trimmed_mean," << tm.value << "\nwinsorized_mean," << wm.value << '\n';
    if (args.has_gamma) {
        const auto spec = WeightSpec::generalized(args.alpha, args.gamma);
        const auto raw = smoothly_trimmed_mean(sample, spec, false);
        const auto norm = smoothly_trimmed_mean(sample, spec, true);
        const auto dw = discrete_weights(sample.size(), spec);
        j["gamma"] = args.gamma;
        j["stm_raw"] = raw.value;
        j["stm_normalized"] = norm.value;
        j["K"] = dw.K;
        csv << "stm_raw," << raw.value << "\nstm_normalized," << norm.value << "\nK," << dw.K
            << '\n';
    }
    emit(args.format, args.output, csv.str(), j);
    return 0;
}

int cmd_variance(const CommonArgs& args, std::uint64_t /*seed*/) {
    const SortedSample sample(read_numeric_csv_file(args.input));
    json rows = json::array();
    std::ostringstream csv;
    csv << "method,scale,value\n";
    const auto add = [&](const VarianceEstimate& v) {
        rows.push_back({{"method", method_name(v.method)},
                        {"scale", scale_name(v.scale)},
                        {"value", v.value}});
        csv << method_name(v.method) << ',' << scale_name(v.scale) << ',' << v.value << '\n';
    };
    const auto tm = tm_variance_hat(sample, args.alpha);
    add(tm);
    add(estimator_level(tm, sample.size()));
    if (args.has_gamma) {
        const auto spec = WeightSpec::generalized(args.alpha, args.gamma);
        add(stm_variance_hat(sample, spec));
        add(jackknife_variance(sample, make_stm_estimator(spec)));
        const auto quad = influence_variance_quadrature(empirical_quantile_fn(sample), spec);
        add(quad);
        add(influence_variance_quadrature(empirical_quantile_fn(sample), spec, sample.size()));
    }
    json j{{"n", sample.size()}, {"alpha", args.alpha}, {"estimates", rows}};
    if (args.has_gamma) j["gamma"] = args.gamma;
    emit(args.format, args.output, csv.str(), j);
    return 0;
}

int cmd_ci(const CommonArgs& args, const std::string& method, double level, int resamples,
           std::uint64_t seed) {
    const SortedSample sample(read_numeric_csv_file(args.input));
    if (method == "el") {
        if (!args.has_gamma) throw ParameterError("--method el needs --gamma");
        const auto spec = WeightSpec::generalized(args.alpha, args.gamma);
        const ELInterval el = el_confidence_interval_detail(sample, spec, level);
        json j = ci_to_json(el.ci, "stm");
        j["a_hat"] = el.a_hat;
        j["lambda_lower"] = el.lambda_lower;
        j["lambda_upper"] = el.lambda_upper;
        emit(args.format, args.output, ci_to_csv(el.ci, "stm"), j);
        return 0;
    }
    ConfidenceInterval ci;
    std::string estimator = "tm";
    if (method == "normal") {
        if (args.has_gamma) {
            const auto spec = WeightSpec::generalized(args.alpha, args.gamma);
            ci = normal_ci(smoothly_trimmed_mean(sample, spec), stm_variance_hat(sample, spec),
                           level);
            estimator = "stm";
        } else {
            ci = normal_ci(trimmed_mean(sample, args.alpha),
                           estimator_level(tm_variance_hat(sample, args.alpha), sample.size()),
                           level);
        }
    } else if (method == "boot") {
        Estimator est;
        if (args.has_gamma) {
            est = make_stm_estimator(WeightSpec::generalized(args.alpha, args.gamma));
            estimator = "stm";
        } else {
            est = make_trimmed_mean_estimator(args.alpha);
        }
        ci = bootstrap_percentile_ci(sample, est, level, resamples, seed);
    } else if (method == "t") {
        ci = student_t_ci(sample, level);
        estimator = "mean";
    } else {
        throw ParameterError("unknown CI method '" + method + "' (use normal|el|boot|t)");
    }
    emit(args.format, args.output, ci_to_csv(ci, estimator), ci_to_json(ci, estimator));
    return 0;
}

int cmd_select(const CommonArgs& args, const std::string& alphas_text,
               const std::string& gammas_text) {
    const SortedSample sample(read_numeric_csv_file(args.input));
    const auto alphas = parse_double_list(alphas_text, "alpha");
    const auto gammas = parse_double_list(gammas_text, "gamma");
    const SelectionResult sel = select_parameters(sample, alphas, gammas);
    std::ostringstream csv;
    csv << "alpha,gamma,variance,selected\n";
    json profile = json::array();
    for (const auto& row : sel.profile) {
        const bool chosen = row.alpha == sel.alpha && row.gamma == sel.gamma;
        char buf[128];
        std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%d\n", row.alpha, row.gamma,
                      row.variance, chosen ? 1 : 0);
        csv << buf;
        profile.push_back(
            {{"alpha", row.alpha}, {"gamma", row.gamma}, {"variance", row.variance}});
    }
    json j{{"selected",
            {{"alpha", sel.alpha}, {"gamma", sel.gamma}, {"variance", sel.variance.value}}},
           {"profile", profile},
           {"n", sample.size()}};
    emit(args.format, args.output, csv.str(), j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"smoothly trimmed means: estimates, variances, confidence intervals, studies"};
    app.require_subcommand(1);

    // shared option storage; each subcommand registers only what it uses
    CommonArgs args;
    std::string method = "normal";
    std::string mixture_text;
    std::string methods_text = "normal,el";
    std::string alphas_text = "0,0.05,0.1,0.15,0.2,0.25";
    std::string gammas_text = "0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45";
    std::vector<std::string> stm_pairs;
    std::vector<double> tm_alphas;
    double level = 0.95;
    std::size_t n = 100;
    int reps = 10000;
    int resamples = 2000;
    int threads = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;

    const auto add_io = [&](CLI::App* cmd) {
        cmd->add_option("--input", args.input, "single-column CSV input")
            ->required()
            ->check(CLI::ExistingFile);
        cmd->add_option("--output", args.output, "output path (default: stdout)");
        cmd->add_option("--format", args.format, "output format (json|csv)")
            ->check(CLI::IsMember({"json", "csv"}));
    };
    const auto add_seed = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "RNG seed (fallback: SMOOTHTRIM_SEED, then 12345)")
            ->each([&](const std::string&) { seed_given = true; });
    };

    auto* estimate = app.add_subcommand("estimate", "trimmed/Winsorized/smoothly trimmed means");
    add_io(estimate);
    estimate->add_option("--alpha", args.alpha, "trimming proportion")->required();
    auto* est_gamma = estimate->add_option("--gamma", args.gamma, "smoothing proportion");

    auto* variance = app.add_subcommand("variance", "variance estimates for one sample");
    add_io(variance);
    variance->add_option("--alpha", args.alpha, "trimming proportion")->required();
    auto* var_gamma = variance->add_option("--gamma", args.gamma, "smoothing proportion");

    auto* ci = app.add_subcommand("ci", "confidence interval for one sample");
    add_io(ci);
    ci->add_option("--method", method, "normal|el|boot|t")->required();
    ci->add_option("--alpha", args.alpha, "trimming proportion");
    auto* ci_gamma = ci->add_option("--gamma", args.gamma, "smoothing proportion");
    ci->add_option("--level", level, "confidence level")->check(CLI::Range(0.0, 1.0));
    ci->add_option("--B", resamples, "bootstrap resamples");
    add_seed(ci);

    auto* sim_var = app.add_subcommand("simulate-variance",
                                       "Monte Carlo means of jackknife and closed-form variances");
    sim_var->add_option("--mixture", mixture_text, "w*N(mean,variance)+... specification")
        ->required();
    sim_var->add_option("--n", n, "sample size")->required();
    sim_var->add_option("--alpha", args.alpha, "trimming proportion")->required();
    sim_var->add_option("--gamma", args.gamma, "smoothing proportion")->required();
    sim_var->add_option("--reps", reps, "replicates");
    add_seed(sim_var);
    sim_var->add_option("--output", args.output, "output path (default: stdout)");
    sim_var->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* sim_quant = app.add_subcommand(
        "simulate-quantiles", "empirical 0.95 quantiles of the standardized statistics");
    sim_quant->add_option("--mixture", mixture_text, "w*N(mean,variance)+...")->required();
    sim_quant->add_option("--n", n, "sample size")->required();
    sim_quant->add_option("--reps", reps, "replicates");
    sim_quant->add_option("--stm", stm_pairs, "STM cell alpha:gamma (repeatable)");
    sim_quant->add_option("--tm", tm_alphas, "TM cell alpha (repeatable)");
    sim_quant->add_option("--threads", threads, "worker threads");
    add_seed(sim_quant);
    sim_quant->add_option("--output", args.output, "output path (default: stdout)");
    sim_quant->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* sim_cov =
        app.add_subcommand("simulate-coverage", "CI coverage and average length study");
    sim_cov->add_option("--mixture", mixture_text, "w*N(mean,variance)+...")->required();
    sim_cov->add_option("--n", n, "sample size")->required();
    sim_cov->add_option("--reps", reps, "replicates");
    sim_cov->add_option("--stm", stm_pairs, "STM cell alpha:gamma (repeatable)");
    sim_cov->add_option("--tm", tm_alphas, "TM cell alpha (repeatable)");
    sim_cov->add_option("--methods", methods_text, "comma list of normal,el,boot,t");
    sim_cov->add_option("--level", level, "confidence level")->check(CLI::Range(0.0, 1.0));
    sim_cov->add_option("--B", resamples, "bootstrap resamples");
    sim_cov->add_option("--threads", threads, "worker threads");
    add_seed(sim_cov);
    sim_cov->add_option("--output", args.output, "output path (default: stdout)");
    sim_cov->add_option("--format", args.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* select = app.add_subcommand("select",
                                      "variance-minimizing (alpha, gamma) over a grid");
    add_io(select);
    select->add_option("--alphas", alphas_text, "comma list of alpha grid values");
    select->add_option("--gammas", gammas_text, "comma list of gamma grid values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (!seed_given) seed = seed_fallback();
        args.has_gamma = est_gamma->count() > 0 || var_gamma->count() > 0 ||
                         ci_gamma->count() > 0;
        const bool simulation =
            sim_var->parsed() || sim_quant->parsed() || sim_cov->parsed();
        if (args.format.empty()) args.format = simulation ? "csv" : "json";
        if (estimate->parsed()) return cmd_estimate(args);
        if (variance->parsed()) return cmd_variance(args, seed);
        if (ci->parsed()) return cmd_ci(args, method, level, resamples, seed);
        if (select->parsed()) return cmd_select(args, alphas_text, gammas_text);

        // simulation subcommands share a StudyConfig
        StudyConfig cfg{MixtureModel::parse(mixture_text)};
        cfg.n = n;
        cfg.reps = reps;
        cfg.level = level;
        cfg.seed = seed;
        cfg.threads = threads;
        cfg.bootstrap_resamples = resamples;
        if (sim_var->parsed()) {
            cfg.stm_specs = {WeightSpec::generalized(args.alpha, args.gamma)};
            const auto report = variance_comparison_study(cfg);
            emit(args.format, args.output, report.to_csv(), report.to_json());
            return 0;
        }
        cfg.stm_specs = parse_stm_pairs(stm_pairs);
        cfg.tm_alphas = tm_alphas;
        if (sim_quant->parsed()) {
            const auto report = quantile_study(cfg);
            emit(args.format, args.output, report.to_csv(), report.to_json());
            return 0;
        }
        if (sim_cov->parsed()) {
            cfg.methods = parse_methods(methods_text);
            const auto report = coverage_study(cfg);
            emit(args.format, args.output, report.to_csv(), report.to_json());
            return 0;
        }
        throw ParameterError("no subcommand selected");
    } catch (const ParameterError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
