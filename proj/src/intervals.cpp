#include "smoothtrim/intervals.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "smoothtrim/error.hpp"
#include "smoothtrim/numeric.hpp"
#include "smoothtrim/rng.hpp"
#include "smoothtrim/special.hpp"

namespace smoothtrim {

namespace {
// stream tag separating bootstrap index draws from other consumers of a seed
constexpr std::uint64_t kBootstrapTag = 0x626f6f74ull;
}  // namespace

const char* method_name(CIMethod m) {
    switch (m) {
        case CIMethod::NormalApprox: return "normal";
        case CIMethod::ELMethod: return "el";
        case CIMethod::BootstrapPercentile: return "boot";
        case CIMethod::StudentT: return "t";
    }
    return "?";
}

ConfidenceInterval normal_ci(const EstimateResult& estimate, const VarianceEstimate& variance,
                             double level) {
    if (!(level > 0.0 && level < 1.0)) throw ParameterError("confidence level outside (0,1)");
    if (variance.scale != VarianceScale::EstimatorLevel)
        throw ParameterError(
            "normal_ci needs an estimator-level variance; convert with estimator_level(v, n)");
    if (!(variance.value >= 0.0)) throw ParameterError("variance must be nonnegative");
    const double z = normal_quantile(0.5 * (1.0 + level));
    const double hw = z * std::sqrt(variance.value);
    return {estimate.value - hw, estimate.value + hw, level, CIMethod::NormalApprox,
            estimate.value, false};
}

ConfidenceInterval bootstrap_percentile_ci(const SortedSample& sample, const Estimator& estimator,
                                           double level, int resamples, std::uint64_t seed) {
    if (!(level > 0.0 && level < 1.0)) throw ParameterError("confidence level outside (0,1)");
    if (resamples < 200) throw ParameterError("bootstrap needs at least 200 resamples");
    const std::size_t n = sample.size();
    std::vector<double> stats;
    stats.reserve(static_cast<std::size_t>(resamples));
    int failures = 0;
    std::vector<double> draw(n);
    for (int b = 0; b < resamples; ++b) {
        Rng rng(Rng::derive(seed, kBootstrapTag, static_cast<std::uint64_t>(b)));
        for (std::size_t i = 0; i < n; ++i) draw[i] = sample.values()[rng.next_index(n)];
        try {
            stats.push_back(estimator(SortedSample(std::vector<double>(draw))));
        } catch (const Error&) {
            ++failures;
        }
    }
    if (failures * 100 > resamples)
        throw NumericError("more than 1% of bootstrap resamples failed");
    std::sort(stats.begin(), stats.end());
    const double lower = quantile_type7_sorted(stats, 0.5 * (1.0 - level));
    const double upper = quantile_type7_sorted(stats, 0.5 * (1.0 + level));
    const double point = estimator(sample);
    const bool outside = point < lower || point > upper;
    return {lower, upper, level, CIMethod::BootstrapPercentile, point, outside};
}

ConfidenceInterval student_t_ci(const SortedSample& sample, double level) {
    if (!(level > 0.0 && level < 1.0)) throw ParameterError("confidence level outside (0,1)");
    const std::size_t n = sample.size();
    if (n < 2) throw ParameterError("t interval needs n >= 2");
    const double mean = kahan_sum(sample.span()) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : sample.values()) ss += (v - mean) * (v - mean);
    const double se = std::sqrt(ss / static_cast<double>(n - 1) / static_cast<double>(n));
    const double t = student_t_quantile(0.5 * (1.0 + level), static_cast<double>(n - 1));
    return {mean - t * se, mean + t * se, level, CIMethod::StudentT, mean, false};
}

}  // namespace smoothtrim
