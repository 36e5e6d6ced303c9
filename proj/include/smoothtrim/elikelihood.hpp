#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "smoothtrim/intervals.hpp"
#include "smoothtrim/sample.hpp"
#include "smoothtrim/weights.hpp"

namespace smoothtrim {

/// Precomputed state for empirical-likelihood evaluations on one sample:
/// the retained values X_(r+1)..X_(n-r), their renormalized weights, the
/// weighted point estimate and the chi-square scaling constant a_hat.
class ELContext {
  public:
    ELContext(const SortedSample&, const WeightSpec&);

    std::size_t r() const { return r_; }
    /// Number of retained observations n - 2r.
    std::size_t m_el() const { return m_el_; }
    std::span<const double> trimmed_values() const { return x_; }
    std::span<const double> weights() const { return w_; }

    /// Weighted mean of the retained values; equals the normalized STM.
    double point() const { return point_; }
    double a_hat() const { return a_hat_; }

    double data_lo() const { return data_lo_; }  ///< X_(r+1)
    double data_hi() const { return data_hi_; }  ///< X_(n-r)
    double hull_lo() const { return hull_lo_; }  ///< smallest positive-weight value
    double hull_hi() const { return hull_hi_; }  ///< largest positive-weight value
    double full_range() const { return full_range_; }

    struct Eval {
        double lambda = 0.0;
        double log_ratio = 0.0;  ///< l(mu) >= 0
        double scaled = 0.0;     ///< a_hat * l(mu)
    };

    /// Throws NoRootError when mu is outside the open hull of the
    /// positive-weight values.
    Eval eval(double mu) const;

  private:
    std::size_t r_ = 0, m_el_ = 0;
    std::vector<double> x_, w_;
    double point_ = 0.0, a_hat_ = 0.0;
    double data_lo_ = 0.0, data_hi_ = 0.0;
    double hull_lo_ = 0.0, hull_hi_ = 0.0;
    double full_range_ = 0.0;
};

/// Root of sum_i w_i W_i / (1 + lambda W_i) = 0 over the positive-weight
/// entries. The equation is strictly decreasing on the admissible interval
/// (-1/max W, -1/min W), so the root is unique; solved by safeguarded Newton
/// with bisection fallback after rescaling W to unit magnitude. Requires
/// min W < 0 < max W, otherwise NoRootError.
double solve_lambda(std::span<const double> W, std::span<const double> w);

/// l = 2 m sum w_i log(1 + lambda W_i) for already-centered values W with
/// weights w (solves for lambda internally). The reduced form used by the
/// sample-level entry points.
double el_log_ratio_centered(std::span<const double> W, std::span<const double> w,
                             std::size_t m);

struct ELResult {
    double lambda = 0.0;
    double log_ratio = 0.0;
    double scaled = 0.0;
    double a_hat = 0.0;
    /// p_i = w_i / (1 + lambda W_i) over the retained indices.
    std::vector<double> probabilities;
};

/// l(mu) = 2 sum m w_i log(1 + lambda W_i) with W_i = X_(i) - mu.
ELResult el_log_ratio(const SortedSample&, const WeightSpec&, double mu);

/// a_hat = sigma2_hat / ((1 - 2 alpha) D_hat n) with
/// sigma2_hat = sum w_i (X_(i) - STM)^2.
double scaling_constant_hat(const SortedSample&, const WeightSpec&);

struct ELInterval {
    ConfidenceInterval ci;
    double a_hat = 0.0;
    double lambda_lower = 0.0;  ///< lambda at the lower endpoint
    double lambda_upper = 0.0;  ///< lambda at the upper endpoint
};

/// Endpoints are the two roots of a_hat l(mu) = chi^2_{level,1}, bisected
/// outward from the point estimate within (X_(r+1)+eps, X_(n-r)-eps); if the
/// threshold is not reached before a data bound the interval is clipped there
/// and flagged. level must lie in (0.5, 1).
ELInterval el_confidence_interval_detail(const SortedSample&, const WeightSpec&, double level);
ConfidenceInterval el_confidence_interval(const SortedSample&, const WeightSpec&, double level);

}  // namespace smoothtrim
