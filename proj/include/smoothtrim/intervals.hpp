#pragma once

#include <cstdint>

#include "smoothtrim/estimators.hpp"
#include "smoothtrim/sample.hpp"
#include "smoothtrim/variance.hpp"

namespace smoothtrim {

enum class CIMethod { NormalApprox, ELMethod, BootstrapPercentile, StudentT };

struct ConfidenceInterval {
    double lower = 0.0;
    double upper = 0.0;
    double level = 0.0;
    CIMethod method = CIMethod::NormalApprox;
    double point = 0.0;
    /// EL: an endpoint stopped at a data bound before reaching the threshold.
    /// Bootstrap: the point estimate fell outside the percentile interval.
    bool clipped = false;
};

const char* method_name(CIMethod);

/// point +/- z_{(1+level)/2} sqrt(variance). The variance must be
/// EstimatorLevel; convert FunctionalLevel values with estimator_level().
ConfidenceInterval normal_ci(const EstimateResult&, const VarianceEstimate&, double level);

/// Percentile bootstrap with type-7 quantiles. Resample b draws its
/// indices from an Rng stream derived from (seed, b), so the result is
/// deterministic per seed and independent of evaluation order. Resamples on
/// which the estimator throws are skipped; more than 1% failures is an error.
ConfidenceInterval bootstrap_percentile_ci(const SortedSample&, const Estimator&,
                                           double level, int resamples = 2000,
                                           std::uint64_t seed = 0);

/// mean +/- t_{(1+level)/2, n-1} s / sqrt(n).
ConfidenceInterval student_t_ci(const SortedSample&, double level);

}  // namespace smoothtrim
