#include "smoothtrim/studies.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

#include "smoothtrim/elikelihood.hpp"
#include "smoothtrim/error.hpp"
#include "smoothtrim/numeric.hpp"
#include "smoothtrim/rng.hpp"

namespace smoothtrim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt_g(double v, int digits = 10) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string fmt_cell_num(double v) { return std::isnan(v) ? std::string() : fmt_g(v); }

nlohmann::json json_num_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

/// One estimator column of a study: either an STM spec or a TM alpha.
struct EstimatorCell {
    bool is_stm = false;
    double alpha = 0.0;
    std::optional<WeightSpec> spec;

    std::string label() const {
        if (is_stm) return "stm a=" + fmt_g(alpha, 12) + " g=" + fmt_g(spec->gamma, 12);
        return "tm a=" + fmt_g(alpha, 12);
    }
    std::uint64_t key() const { return fnv1a64(label()); }
    double gamma_or_nan() const { return is_stm ? spec->gamma : kNaN; }
};

std::vector<EstimatorCell> estimator_cells(const StudyConfig& cfg) {
    std::vector<EstimatorCell> cells;
    for (const auto& spec : cfg.stm_specs) {
        spec.validate();
        cells.push_back({true, spec.alpha, spec});
    }
    for (double a : cfg.tm_alphas) cells.push_back({false, a, std::nullopt});
    return cells;
}

/// Runs fn(rep) for rep in [0, reps); with threads > 1 the replicates are
/// handed out through an atomic counter and results must be written to
/// per-replicate slots, which keeps every reduction order-independent.
void parallel_for(int reps, int threads, const std::function<void(int)>& fn) {
    if (threads <= 1 || reps < 2) {
        for (int i = 0; i < reps; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    const int workers = std::min(threads, reps);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < reps; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

double cell_truth(const StudyConfig& cfg, const EstimatorCell& cell) {
    if (cell.is_stm) return stm_true_mean(cfg.model, *cell.spec);
    return stm_true_mean(cfg.model, WeightSpec::hard_trim(cell.alpha));
}

ConfidenceInterval build_ci(const SortedSample& sample, const EstimatorCell& cell,
                            CIMethod method, const StudyConfig& cfg, std::uint64_t boot_seed) {
    switch (method) {
        case CIMethod::NormalApprox: {
            if (cell.is_stm) {
                const auto est = smoothly_trimmed_mean(sample, *cell.spec);
                return normal_ci(est, stm_variance_hat(sample, *cell.spec), cfg.level);
            }
            const auto est = trimmed_mean(sample, cell.alpha);
            const auto var =
                estimator_level(tm_variance_hat(sample, cell.alpha), sample.size());
            return normal_ci(est, var, cfg.level);
        }
        case CIMethod::ELMethod:
            if (!cell.is_stm)
                throw ParameterError("EL intervals apply to the smoothly trimmed mean only");
            return el_confidence_interval(sample, *cell.spec, cfg.level);
        case CIMethod::BootstrapPercentile: {
            const Estimator est = cell.is_stm ? make_stm_estimator(*cell.spec)
                                              : make_trimmed_mean_estimator(cell.alpha);
            return bootstrap_percentile_ci(sample, est, cfg.level, cfg.bootstrap_resamples,
                                           boot_seed);
        }
        case CIMethod::StudentT:
            return student_t_ci(sample, cfg.level);
    }
    throw ParameterError("unknown CI method");
}

void csv_header(std::ostringstream& out, const char* fields) {
    out << fields << '\n';
}

}  // namespace

void StudyConfig::validate() const {
    if (reps < 100) throw ParameterError("study needs reps >= 100");
    if (n < 20) throw ParameterError("study needs n >= 20");
    if (stm_specs.empty() && tm_alphas.empty())
        throw ParameterError("study needs at least one estimator cell");
    if (!(level > 0.0 && level < 1.0)) throw ParameterError("level outside (0,1)");
    if (threads < 1) throw ParameterError("threads must be >= 1");
    for (double a : tm_alphas)
        if (!(a >= 0.0 && a < 0.5)) throw ParameterError("tm alpha outside [0, 0.5)");
}

CoverageReport coverage_study(const StudyConfig& cfg) {
    cfg.validate();
    CoverageReport report;
    report.mixture = cfg.model.to_string();
    report.n = cfg.n;
    report.reps = cfg.reps;
    report.level = cfg.level;
    report.seed = cfg.seed;

    for (const auto& cell : estimator_cells(cfg)) {
        std::vector<CIMethod> methods;
        for (CIMethod m : cfg.methods)
            if (cell.is_stm || m != CIMethod::ELMethod) methods.push_back(m);
        if (methods.empty()) continue;

        const double truth = cell_truth(cfg, cell);
        const std::uint64_t cell_key = cell.key();
        const auto reps = static_cast<std::size_t>(cfg.reps);
        std::vector<std::vector<double>> lengths(methods.size(),
                                                 std::vector<double>(reps, kNaN));
        std::vector<std::vector<std::uint8_t>> covered(methods.size(),
                                                       std::vector<std::uint8_t>(reps, 0));

        parallel_for(cfg.reps, cfg.threads, [&](int rep) {
            const auto sample =
                cfg.model.sample(cfg.n, Rng::derive(cfg.seed, cell_key, static_cast<std::uint64_t>(rep)));
            for (std::size_t mi = 0; mi < methods.size(); ++mi) {
                try {
                    const std::uint64_t boot_seed =
                        Rng::derive(cfg.seed ^ kReportSchemaVersion, cell_key,
                                    static_cast<std::uint64_t>(rep));
                    const ConfidenceInterval ci =
                        build_ci(sample, cell, methods[mi], cfg, boot_seed);
                    covered[mi][static_cast<std::size_t>(rep)] =
                        (ci.lower <= truth && truth <= ci.upper) ? 1 : 0;
                    lengths[mi][static_cast<std::size_t>(rep)] = ci.upper - ci.lower;
                } catch (const Error&) {
                    // counted as a failure below
                }
            }
        });

        for (std::size_t mi = 0; mi < methods.size(); ++mi) {
            int failures = 0;
            int hits = 0;
            double length_sum = 0.0;
            int ok = 0;
            for (std::size_t rep = 0; rep < reps; ++rep) {
                if (std::isnan(lengths[mi][rep])) {
                    ++failures;
                    continue;
                }
                ++ok;
                length_sum += lengths[mi][rep];
                hits += covered[mi][rep];
            }
            if (failures * 50 > cfg.reps)  // > 2%
                throw NumericError("coverage study cell '" + cell.label() +
                                   "' failed in more than 2% of replicates");
            CoverageCell out;
            out.estimator = cell.is_stm ? "stm" : "tm";
            out.alpha = cell.alpha;
            out.gamma = cell.gamma_or_nan();
            out.method = methods[mi];
            out.coverage = static_cast<double>(hits) / static_cast<double>(cfg.reps);
            out.avg_length = ok > 0 ? length_sum / ok : kNaN;
            out.failures = failures;
            report.cells.push_back(std::move(out));
        }
    }
    return report;
}

QuantileReport quantile_study(const StudyConfig& cfg) {
    cfg.validate();
    QuantileReport report;
    report.mixture = cfg.model.to_string();
    report.n = cfg.n;
    report.reps = cfg.reps;
    report.seed = cfg.seed;

    for (const auto& cell : estimator_cells(cfg)) {
        const double truth = cell_truth(cfg, cell);
        const std::uint64_t cell_key = cell.key();
        std::vector<double> stats(static_cast<std::size_t>(cfg.reps), kNaN);

        parallel_for(cfg.reps, cfg.threads, [&](int rep) {
            const auto sample =
                cfg.model.sample(cfg.n, Rng::derive(cfg.seed, cell_key, static_cast<std::uint64_t>(rep)));
            try {
                double est = 0.0;
                double var = 0.0;
                if (cell.is_stm) {
                    est = smoothly_trimmed_mean(sample, *cell.spec).value;
                    var = stm_variance_hat(sample, *cell.spec).value;
                } else {
                    est = trimmed_mean(sample, cell.alpha).value;
                    var = estimator_level(tm_variance_hat(sample, cell.alpha), sample.size()).value;
                }
                stats[static_cast<std::size_t>(rep)] = std::abs(est - truth) / std::sqrt(var);
            } catch (const Error&) {
            }
        });

        std::vector<double> good;
        good.reserve(stats.size());
        for (double v : stats)
            if (!std::isnan(v)) good.push_back(v);
        const int failures = cfg.reps - static_cast<int>(good.size());
        if (failures * 50 > cfg.reps)
            throw NumericError("quantile study cell '" + cell.label() +
                               "' failed in more than 2% of replicates");
        std::sort(good.begin(), good.end());
        QuantileCell out;
        out.estimator = cell.is_stm ? "stm" : "tm";
        out.alpha = cell.alpha;
        out.gamma = cell.gamma_or_nan();
        out.q95 = quantile_type7_sorted(good, 0.95);
        out.failures = failures;
        report.cells.push_back(std::move(out));
    }
    return report;
}

VarianceComparisonReport variance_comparison_study(const StudyConfig& cfg) {
    cfg.validate();
    if (cfg.stm_specs.empty())
        throw ParameterError("variance comparison needs at least one (alpha, gamma) spec");
    VarianceComparisonReport report;
    report.mixture = cfg.model.to_string();
    report.n = cfg.n;
    report.reps = cfg.reps;
    report.seed = cfg.seed;

    using clock = std::chrono::steady_clock;
    for (const auto& spec : cfg.stm_specs) {
        EstimatorCell cell{true, spec.alpha, spec};
        const std::uint64_t cell_key = cell.key();
        const Estimator stm = make_stm_estimator(spec);
        std::vector<double> asym(static_cast<std::size_t>(cfg.reps));
        std::vector<double> jack(static_cast<std::size_t>(cfg.reps));
        std::chrono::nanoseconds asym_ns{0}, jack_ns{0};
        // single-threaded on purpose: the reported time ratio should compare
        // like with like
        for (int rep = 0; rep < cfg.reps; ++rep) {
            const auto sample =
                cfg.model.sample(cfg.n, Rng::derive(cfg.seed, cell_key, static_cast<std::uint64_t>(rep)));
            const auto t0 = clock::now();
            asym[static_cast<std::size_t>(rep)] = stm_variance_hat(sample, spec).value;
            const auto t1 = clock::now();
            jack[static_cast<std::size_t>(rep)] = jackknife_variance(sample, stm).value;
            const auto t2 = clock::now();
            asym_ns += t1 - t0;
            jack_ns += t2 - t1;
        }
        VarianceComparisonCell out;
        out.alpha = spec.alpha;
        out.gamma = spec.gamma;
        out.asymptotic_mean = kahan_sum(asym) / cfg.reps;
        out.jackknife_mean = kahan_sum(jack) / cfg.reps;
        out.time_ratio = asym_ns.count() > 0
                             ? static_cast<double>(jack_ns.count()) /
                                   static_cast<double>(asym_ns.count())
                             : std::numeric_limits<double>::infinity();
        report.cells.push_back(out);
    }
    return report;
}

SelectionResult select_parameters(const SortedSample& sample, std::span<const double> alpha_grid,
                                  std::span<const double> gamma_grid) {
    if (alpha_grid.empty() || gamma_grid.empty())
        throw ParameterError("selection grids must not be empty");
    std::vector<double> alphas(alpha_grid.begin(), alpha_grid.end());
    std::vector<double> gammas(gamma_grid.begin(), gamma_grid.end());
    std::sort(alphas.begin(), alphas.end());
    std::sort(gammas.begin(), gammas.end());

    SelectionResult out;
    double best = std::numeric_limits<double>::infinity();
    bool found = false;
    const std::size_t n = sample.size();
    for (double a : alphas) {
        if (!(a >= 0.0 && a < 0.5)) continue;
        for (double g : gammas) {
            if (!(g > a && g <= 0.5)) continue;
            const std::size_t r = trim_count(n, a);
            const std::size_t m = trim_count(n, g);
            if (m <= r || n < 2 * m + 1) continue;
            const WeightSpec spec = WeightSpec::generalized(a, g);
            double value = 0.0;
            try {
                value = stm_variance_hat(sample, spec).value;
            } catch (const Error&) {
                continue;
            }
            out.profile.push_back({a, g, value});
            // strict < plus the ascending sweep order implements the
            // smallest-alpha-then-smallest-gamma tie break
            if (value < best) {
                best = value;
                out.alpha = a;
                out.gamma = g;
                found = true;
            }
        }
    }
    if (!found) throw ParameterError("no admissible (alpha, gamma) cell on the grids");
    out.variance = {best, VarianceMethod::STMAsymptotic, VarianceScale::EstimatorLevel};
    return out;
}

std::string CoverageReport::to_csv() const {
    std::ostringstream out;
    csv_header(out,
               "schema_version,mixture,n,reps,level,seed,estimator,alpha,gamma,method,"
               "coverage,avg_length,failures");
    for (const auto& c : cells) {
        out << schema_version << ",\"" << mixture << "\"," << n << ',' << reps << ','
            << fmt_g(level) << ',' << seed << ',' << c.estimator << ',' << fmt_g(c.alpha) << ','
            << fmt_cell_num(c.gamma) << ',' << method_name(c.method) << ',' << fmt_g(c.coverage)
            << ',' << fmt_g(c.avg_length) << ',' << c.failures << '\n';
    }
    return out.str();
}

nlohmann::json CoverageReport::to_json() const {
    nlohmann::json cells_json = nlohmann::json::array();
    for (const auto& c : cells) {
        cells_json.push_back({{"estimator", c.estimator},
                              {"alpha", c.alpha},
                              {"gamma", json_num_or_null(c.gamma)},
                              {"method", method_name(c.method)},
                              {"coverage", c.coverage},
                              {"avg_length", c.avg_length},
                              {"failures", c.failures}});
    }
    return {{"schema_version", schema_version}, {"kind", "coverage_study"},
            {"mixture", mixture},               {"n", n},
            {"reps", reps},                     {"level", level},
            {"seed", seed},                     {"cells", cells_json}};
}

std::string QuantileReport::to_csv() const {
    std::ostringstream out;
    csv_header(out, "schema_version,mixture,n,reps,seed,estimator,alpha,gamma,q95,failures");
    for (const auto& c : cells) {
        out << schema_version << ",\"" << mixture << "\"," << n << ',' << reps << ',' << seed
            << ',' << c.estimator << ',' << fmt_g(c.alpha) << ',' << fmt_cell_num(c.gamma) << ','
            << fmt_g(c.q95) << ',' << c.failures << '\n';
    }
    return out.str();
}

nlohmann::json QuantileReport::to_json() const {
    nlohmann::json cells_json = nlohmann::json::array();
    for (const auto& c : cells) {
        cells_json.push_back({{"estimator", c.estimator},
                              {"alpha", c.alpha},
                              {"gamma", json_num_or_null(c.gamma)},
                              {"q95", c.q95},
                              {"failures", c.failures}});
    }
    return {{"schema_version", schema_version}, {"kind", "quantile_study"},
            {"mixture", mixture},               {"n", n},
            {"reps", reps},                     {"seed", seed},
            {"cells", cells_json}};
}

std::string VarianceComparisonReport::to_csv() const {
    std::ostringstream out;
    csv_header(out,
               "schema_version,mixture,n,reps,seed,alpha,gamma,jack_var_mean,asym_var_mean,"
               "time_ratio");
    for (const auto& c : cells) {
        out << schema_version << ",\"" << mixture << "\"," << n << ',' << reps << ',' << seed
            << ',' << fmt_g(c.alpha) << ',' << fmt_g(c.gamma) << ',' << fmt_g(c.jackknife_mean)
            << ',' << fmt_g(c.asymptotic_mean) << ',' << fmt_g(c.time_ratio, 4) << '\n';
    }
    return out.str();
}

nlohmann::json VarianceComparisonReport::to_json() const {
    nlohmann::json cells_json = nlohmann::json::array();
    for (const auto& c : cells) {
        cells_json.push_back({{"alpha", c.alpha},
                              {"gamma", c.gamma},
                              {"jack_var_mean", c.jackknife_mean},
                              {"asym_var_mean", c.asymptotic_mean},
                              {"time_ratio", c.time_ratio}});
    }
    return {{"schema_version", schema_version}, {"kind", "variance_comparison_study"},
            {"mixture", mixture},               {"n", n},
            {"reps", reps},                     {"seed", seed},
            {"cells", cells_json}};
}

}  // namespace smoothtrim
