#include "smoothtrim/estimators.hpp"

#include <cmath>
#include <utility>

#include "smoothtrim/error.hpp"
#include "smoothtrim/numeric.hpp"

namespace smoothtrim {

EstimateResult trimmed_mean(const SortedSample& sample, double alpha) {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw ParameterError("alpha must lie in [0, 0.5)");
    const std::size_t n = sample.size();
    const std::size_t r = trim_count(n, alpha);
    if (n < 2 * r + 1) throw ParameterError("over-trim: no observations left after trimming");
    const auto mid = sample.span().subspan(r, n - 2 * r);
    return {kahan_sum(mid) / static_cast<double>(n - 2 * r), EstimatorMethod::TrimmedMean, alpha,
            std::nullopt};
}

EstimateResult winsorized_mean(const SortedSample& sample, double alpha) {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw ParameterError("alpha must lie in [0, 0.5)");
    const std::size_t n = sample.size();
    const std::size_t r = trim_count(n, alpha);
    if (n < 2 * r + 1) throw ParameterError("over-trim: no observations left after trimming");
    const auto mid = sample.span().subspan(r, n - 2 * r);
    const double rd = static_cast<double>(r);
    const double total =
        kahan_sum(mid) + rd * sample.order(r + 1) + rd * sample.order(n - r);
    return {total / static_cast<double>(n), EstimatorMethod::WinsorizedMean, alpha, std::nullopt};
}

EstimateResult smoothly_trimmed_mean(const SortedSample& sample, const WeightSpec& spec,
                                     bool normalized) {
    const DiscreteWeights w = discrete_weights(sample.size(), spec);
    const double weighted = kahan_dot(w.raw, sample.span());
    const double value =
        normalized ? weighted / w.raw_sum : weighted / static_cast<double>(sample.size());
    EstimateResult out;
    out.value = value;
    out.method = normalized ? EstimatorMethod::STMNormalized : EstimatorMethod::STMRaw;
    out.alpha = spec.alpha;
    out.spec = spec;
    return out;
}

Estimator make_mean_estimator() {
    return [](const SortedSample& s) {
        return kahan_sum(s.span()) / static_cast<double>(s.size());
    };
}

Estimator make_trimmed_mean_estimator(double alpha) {
    return [alpha](const SortedSample& s) { return trimmed_mean(s, alpha).value; };
}

Estimator make_stm_estimator(WeightSpec spec, bool normalized) {
    spec.validate();
    return [spec, normalized](const SortedSample& s) {
        return smoothly_trimmed_mean(s, spec, normalized).value;
    };
}

}  // namespace smoothtrim
