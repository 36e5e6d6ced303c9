#pragma once

#include <functional>
#include <optional>

#include "smoothtrim/sample.hpp"
#include "smoothtrim/weights.hpp"

namespace smoothtrim {

enum class EstimatorMethod { TrimmedMean, WinsorizedMean, STMRaw, STMNormalized };

struct EstimateResult {
    double value = 0.0;
    EstimatorMethod method = EstimatorMethod::TrimmedMean;
    double alpha = 0.0;
    std::optional<WeightSpec> spec;  ///< set for the smoothly trimmed variants
};

/// Mean of X_(r+1)..X_(n-r) with r = floor(n*alpha).
EstimateResult trimmed_mean(const SortedSample&, double alpha);

/// Mean after replacing the r smallest values by X_(r+1) and the r largest
/// by X_(n-r).
EstimateResult winsorized_mean(const SortedSample&, double alpha);

/// Weighted mean of order statistics with weights J(i/(n+1)).
/// normalized=true (the library default) rescales the weights to sum to 1,
/// which makes the estimate location-equivariant; normalized=false is the
/// plain (1/n) sum.
EstimateResult smoothly_trimmed_mean(const SortedSample&, const WeightSpec&,
                                     bool normalized = true);

/// Callable point estimator, as consumed by the jackknife, the bootstrap and
/// the study drivers.
using Estimator = std::function<double(const SortedSample&)>;

Estimator make_mean_estimator();
Estimator make_trimmed_mean_estimator(double alpha);
Estimator make_stm_estimator(WeightSpec spec, bool normalized = true);

}  // namespace smoothtrim
