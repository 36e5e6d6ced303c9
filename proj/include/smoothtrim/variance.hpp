#pragma once

#include <cstddef>
#include <vector>

#include "smoothtrim/estimators.hpp"
#include "smoothtrim/quantile_fn.hpp"
#include "smoothtrim/sample.hpp"
#include "smoothtrim/weights.hpp"

namespace smoothtrim {

enum class VarianceMethod { TMAsymptotic, STMAsymptotic, Jackknife, TheoreticalQuadrature };

/// EstimatorLevel is the variance of the statistic itself, O(1/n).
/// FunctionalLevel is the O(1) integral of the squared influence function
/// (equivalently the variance of sqrt(n) times the statistic).
enum class VarianceScale { EstimatorLevel, FunctionalLevel };

struct VarianceEstimate {
    double value = 0.0;
    VarianceMethod method = VarianceMethod::STMAsymptotic;
    VarianceScale scale = VarianceScale::EstimatorLevel;
};

const char* method_name(VarianceMethod);
const char* scale_name(VarianceScale);

/// Converts a FunctionalLevel estimate to EstimatorLevel: value * k_pop^2 / n.
/// Pass k_pop = 1 for the trimmed-mean plug-in, whose (1-2*alpha)^-2
/// normalization is already part of the formula; use spec.k_pop() for the
/// unnormalized influence-function integral. Identity on EstimatorLevel input.
VarianceEstimate estimator_level(const VarianceEstimate&, std::size_t n, double k_pop = 1.0);

/// Plug-in variance for the trimmed mean, Winsorized-deviation form:
/// [sum_{r+1}^{n-r}(X_(i)-Xw)^2 + r(X_(r+1)-Xw)^2 + r(X_(n-r)-Xw)^2]
///   / (n (1-2*alpha)^2).
/// This is FunctionalLevel (O(1)); divide by n for the variance of the mean.
VarianceEstimate tm_variance_hat(const SortedSample&, double alpha);

/// Per-index plug-in influence pieces for the smoothly trimmed mean with
/// r = floor(alpha n), m = floor(gamma n); exposed for diagnostics and the
/// quadrature-oracle comparisons.
struct StmHatPieces {
    std::size_t r = 0;
    std::size_t m = 0;
    double K = 0.0;          ///< n / sum J(i/(n+1))
    std::vector<double> e1;  ///< i = r+1 .. m
    std::vector<double> e2;  ///< i = m+1 .. n-m
    std::vector<double> e3;  ///< i = n-m+1 .. n-r
    double e4 = 0.0;
    double i_hat = 0.0;
};
StmHatPieces stm_hat_pieces(const SortedSample&, const WeightSpec&);

/// Closed-form plug-in estimate of Var(normalized STM):
/// (K^2/n^2) [ r I^2 + sum (E1-I)^2 + sum (E2-I)^2 + sum (E3-I)^2 + r (E4-I)^2 ].
/// EstimatorLevel. Generalized weights only.
VarianceEstimate stm_variance_hat(const SortedSample&, const WeightSpec&);

/// Delete-1 jackknife of an arbitrary estimator; estimator errors propagate.
VarianceEstimate jackknife_variance(const SortedSample&, const Estimator&);

/// Influence function of the smoothly trimmed mean (Generalized weights) for
/// a distribution given by its quantile function. All integrals are taken in
/// u-space after substituting x = F^{-1}(u), split at the breakpoints
/// {alpha, gamma, 1-gamma, 1-alpha} and at the quantile function's own steps.
class InfluenceContext {
  public:
    InfluenceContext(QuantileFn qf, const WeightSpec& spec);

    double I() const { return i_; }
    double E4() const { return e4_; }

    /// IF evaluated at x = F^{-1}(u).
    double value_at_u(double u) const;

    /// IF(x); F(x) is recovered by bisecting the quantile function, so this
    /// expects a continuous strictly increasing qf.
    double value_at_x(double x) const;

    /// alpha I^2 + integrated squared branches + alpha (E4 - I)^2.
    double functional_variance() const;

  private:
    double integral(double lo, double hi) const;
    double integral_u(double lo, double hi) const;
    double e1_val(double u, double x) const;
    double e2_val(double x) const;
    double e3_val(double u, double x) const;
    double invert_u(double x, double ulo, double uhi) const;

    QuantileFn qf_;
    double alpha_ = 0.0;
    double gamma_ = 0.0;
    double xi_alpha_ = 0.0, xi_gamma_ = 0.0, xi_1mg_ = 0.0, xi_1ma_ = 0.0;
    double head_ = 0.0;  ///< common first term of E2/E3/E4
    double i_ = 0.0;
    double e4_ = 0.0;
};

double influence_function(double x, const QuantileFn&, const WeightSpec&);

/// FunctionalLevel variance via quadrature of the influence expressions.
VarianceEstimate influence_variance_quadrature(const QuantileFn&, const WeightSpec&);

/// EstimatorLevel companion: functional value * k_pop^2 / n.
VarianceEstimate influence_variance_quadrature(const QuantileFn&, const WeightSpec&,
                                               std::size_t n);

}  // namespace smoothtrim
