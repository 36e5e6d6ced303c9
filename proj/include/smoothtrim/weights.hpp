#pragma once

#include <cstddef>
#include <vector>

namespace smoothtrim {

enum class WeightKind { Triangular, StiglerTrapezoid, Generalized, HardTrim };

/// Weight-function family J(u) with trimming proportion alpha and, for the
/// Generalized family, smoothing proportion gamma. All four families are
/// symmetric about u = 1/2. J vanishes outside [alpha, 1-alpha]
/// (outside [alpha/2, 1-alpha/2] for the trapezoid).
///
/// Generalized ramps linearly from 0 at alpha to 1 at gamma, is 1 on the
/// closed interval [gamma, 1-gamma], and mirrors down to 0 at 1-alpha.
/// Triangular is the gamma = 0.5 limit. HardTrim is the plain indicator of
/// (alpha, 1-alpha), provided for uniform-weight comparisons.
struct WeightSpec {
    WeightKind kind = WeightKind::Generalized;
    double alpha = 0.0;
    /// Smoothing proportion; meaningful for Generalized only. The factories
    /// store the family's effective value for the other kinds.
    double gamma = 0.5;

    static WeightSpec generalized(double alpha, double gamma);
    static WeightSpec triangular(double alpha);
    static WeightSpec stigler_trapezoid(double alpha);
    static WeightSpec hard_trim(double alpha);

    /// Throws ParameterError when alpha/gamma are outside their domain.
    /// gamma == alpha is rejected for Generalized; use HardTrim for that.
    void validate() const;

    /// Integral of J over [0,1]: 1-alpha-gamma, 0.5-alpha, 1, or 1-2*alpha.
    double weight_integral() const;

    /// Population normalizer 1 / weight_integral().
    double k_pop() const;

    /// Kink/jump locations of J, for exact quadrature splitting.
    std::vector<double> breakpoints() const;

    const char* kind_name() const;
};

/// J(u) for the selected family.
double eval_weight(double u, const WeightSpec& spec);

/// Weights evaluated on the order-statistic grid i/(n+1), i = 1..n.
struct DiscreteWeights {
    std::vector<double> raw;         ///< J(i/(n+1))
    std::vector<double> normalized;  ///< raw / sum(raw)
    double raw_sum = 0.0;
    double K = 0.0;                  ///< n / sum(raw)
    std::size_t support_lo = 0;      ///< first 1-based index with raw > 0
    std::size_t support_hi = 0;      ///< last 1-based index with raw > 0
};

/// Throws DegenerateInput when every raw weight is zero (tiny n, large alpha).
DiscreteWeights discrete_weights(std::size_t n, const WeightSpec& spec);

}  // namespace smoothtrim
