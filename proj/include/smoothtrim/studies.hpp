#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "smoothtrim/distributions.hpp"
#include "smoothtrim/intervals.hpp"
#include "smoothtrim/sample.hpp"
#include "smoothtrim/variance.hpp"
#include "smoothtrim/weights.hpp"

namespace smoothtrim {

inline constexpr int kReportSchemaVersion = 1;

/// Monte Carlo experiment description shared by the study drivers.
/// Replicate rep of a cell draws its sample from the stream
/// derive(seed, fnv1a64(cell label), rep), so results do not depend on the
/// thread count or on which other cells are present.
struct StudyConfig {
    explicit StudyConfig(MixtureModel m) : model(std::move(m)) {}

    MixtureModel model;
    std::size_t n = 100;
    int reps = 10000;
    std::vector<WeightSpec> stm_specs;
    std::vector<double> tm_alphas;
    /// CI methods for coverage studies. ELMethod applies to STM cells only.
    std::vector<CIMethod> methods{CIMethod::NormalApprox, CIMethod::ELMethod};
    double level = 0.95;
    std::uint64_t seed = 0;
    int threads = 1;
    int bootstrap_resamples = 2000;

    void validate() const;  ///< reps >= 100, n >= 20, at least one cell
};

struct CoverageCell {
    std::string estimator;  ///< "stm" or "tm"
    double alpha = 0.0;
    double gamma = std::numeric_limits<double>::quiet_NaN();  ///< NaN for tm
    CIMethod method = CIMethod::NormalApprox;
    double coverage = 0.0;    ///< covering replicates / reps
    double avg_length = 0.0;  ///< over successful replicates
    int failures = 0;
};

struct CoverageReport {
    int schema_version = kReportSchemaVersion;
    std::string mixture;
    std::size_t n = 0;
    int reps = 0;
    double level = 0.0;
    std::uint64_t seed = 0;
    std::vector<CoverageCell> cells;

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

struct QuantileCell {
    std::string estimator;
    double alpha = 0.0;
    double gamma = std::numeric_limits<double>::quiet_NaN();
    double q95 = 0.0;  ///< empirical 0.95 quantile of |est - truth| / sqrt(var)
    int failures = 0;
};

struct QuantileReport {
    int schema_version = kReportSchemaVersion;
    std::string mixture;
    std::size_t n = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    std::vector<QuantileCell> cells;

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

struct VarianceComparisonCell {
    double alpha = 0.0;
    double gamma = 0.0;
    double jackknife_mean = 0.0;
    double asymptotic_mean = 0.0;
    double time_ratio = 0.0;  ///< jackknife wall time / closed-form wall time
};

struct VarianceComparisonReport {
    int schema_version = kReportSchemaVersion;
    std::string mixture;
    std::size_t n = 0;
    int reps = 0;
    std::uint64_t seed = 0;
    std::vector<VarianceComparisonCell> cells;

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

/// Coverage and average length of the requested CI methods against the
/// population target (stm_true_mean; trimmed-mean functional for TM cells).
/// A cell aborts the study when more than 2% of its replicates fail.
CoverageReport coverage_study(const StudyConfig&);

/// Empirical 0.95 quantile of the standardized statistic per cell.
QuantileReport quantile_study(const StudyConfig&);

/// Monte Carlo means of the jackknife and closed-form variance estimates with
/// their wall-time ratio. Always runs single-threaded so the ratio is fair.
VarianceComparisonReport variance_comparison_study(const StudyConfig&);

struct SelectionRow {
    double alpha = 0.0;
    double gamma = 0.0;
    double variance = 0.0;
};

struct SelectionResult {
    double alpha = 0.0;
    double gamma = 0.0;
    VarianceEstimate variance;
    std::vector<SelectionRow> profile;  ///< every admissible evaluated cell
};

/// Grid argmin of stm_variance_hat over admissible (alpha, gamma) pairs;
/// ties break toward the smallest alpha, then the smallest gamma.
SelectionResult select_parameters(const SortedSample&, std::span<const double> alpha_grid,
                                  std::span<const double> gamma_grid);

}  // namespace smoothtrim
