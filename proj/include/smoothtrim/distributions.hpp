#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "smoothtrim/quantile_fn.hpp"
#include "smoothtrim/sample.hpp"
#include "smoothtrim/weights.hpp"

namespace smoothtrim {

struct MixtureComponent {
    double weight = 1.0;
    double mean = 0.0;
    double sd = 1.0;
};

/// Finite Gaussian mixture: cdf, quantile (bisection) and reproducible
/// sampling. The cdf is strictly increasing, so the quantile is unique even
/// across near-flat stretches ("gaps") between well-separated components.
class MixtureModel {
  public:
    explicit MixtureModel(std::vector<MixtureComponent> components);

    double cdf(double x) const;

    /// Unique x with cdf(x) = p, bisected on [min mean - 12 max sd,
    /// max mean + 12 max sd] (widened if needed) to |cdf(x) - p| <= 1e-12.
    double quantile(double p) const;

    /// n draws: component by categorical draw, then a normal deviate.
    /// Deterministic per seed (library Rng), returned sorted.
    SortedSample sample(std::size_t n, std::uint64_t seed) const;

    const std::vector<MixtureComponent>& components() const { return components_; }

    /// Parses "w1*N(m1,v1)+w2*N(m2,v2)+..." where v is the component
    /// variance (sd = sqrt(v)). Whitespace is ignored.
    static MixtureModel parse(std::string_view text);

    /// Inverse of parse (v printed as variance).
    std::string to_string() const;

  private:
    std::vector<MixtureComponent> components_;
};

QuantileFn quantile_fn(const MixtureModel&);

/// Population target of the normalized smoothly trimmed mean:
/// int J(u) F^{-1}(u) du / int J(u) du. With HardTrim weights this is the
/// population trimmed mean.
double stm_true_mean(const QuantileFn&, const WeightSpec&);
double stm_true_mean(const MixtureModel&, const WeightSpec&);

}  // namespace smoothtrim
