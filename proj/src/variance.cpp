#include "smoothtrim/variance.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "smoothtrim/error.hpp"
#include "smoothtrim/numeric.hpp"
#include "smoothtrim/quadrature.hpp"

namespace smoothtrim {

namespace {

double sq(double v) { return v * v; }

void require_generalized(const WeightSpec& spec, const char* what) {
    spec.validate();
    if (spec.kind != WeightKind::Generalized)
        throw ParameterError(std::string(what) + " requires the generalized weight family");
}

}  // namespace

const char* method_name(VarianceMethod m) {
    switch (m) {
        case VarianceMethod::TMAsymptotic: return "tm-asymptotic";
        case VarianceMethod::STMAsymptotic: return "stm-asymptotic";
        case VarianceMethod::Jackknife: return "jackknife";
        case VarianceMethod::TheoreticalQuadrature: return "theoretical-quadrature";
    }
    return "?";
}

const char* scale_name(VarianceScale s) {
    return s == VarianceScale::EstimatorLevel ? "estimator-level" : "functional-level";
}

VarianceEstimate estimator_level(const VarianceEstimate& v, std::size_t n, double k_pop) {
    if (v.scale == VarianceScale::EstimatorLevel) return v;
    if (n == 0) throw ParameterError("estimator-level conversion needs a sample size");
    return {v.value * k_pop * k_pop / static_cast<double>(n), v.method,
            VarianceScale::EstimatorLevel};
}

VarianceEstimate tm_variance_hat(const SortedSample& sample, double alpha) {
    if (!(alpha >= 0.0 && alpha < 0.5)) throw ParameterError("alpha must lie in [0, 0.5)");
    const std::size_t n = sample.size();
    const std::size_t r = trim_count(n, alpha);
    if (n < 2 * r + 2) throw ParameterError("over-trim: need at least two retained observations");
    const double xw = winsorized_mean(sample, alpha).value;
    double acc = 0.0;
    for (std::size_t i = r + 1; i <= n - r; ++i) acc += sq(sample.order(i) - xw);
    acc += static_cast<double>(r) * sq(sample.order(r + 1) - xw);
    acc += static_cast<double>(r) * sq(sample.order(n - r) - xw);
    const double value = acc / (static_cast<double>(n) * sq(1.0 - 2.0 * alpha));
    return {value, VarianceMethod::TMAsymptotic, VarianceScale::FunctionalLevel};
}

StmHatPieces stm_hat_pieces(const SortedSample& sample, const WeightSpec& spec) {
    require_generalized(spec, "stm_variance_hat");
    const std::size_t n = sample.size();
    const std::size_t r = trim_count(n, spec.alpha);
    const std::size_t m = trim_count(n, spec.gamma);
    if (m <= r)
        throw ParameterError("gamma does not separate from alpha at this n (floor(gamma n) <= floor(alpha n))");
    if (n < 2 * m + 1) throw ParameterError("need n - 2 floor(gamma n) >= 1");

    // 1-based prefix sums: S[i] = sum_{k<=i} X_(k), T[i] = sum_{k<=i} k X_(k)
    std::vector<double> S(n + 1, 0.0), T(n + 1, 0.0);
    for (std::size_t i = 1; i <= n; ++i) {
        S[i] = S[i - 1] + sample.order(i);
        T[i] = T[i - 1] + static_cast<double>(i) * sample.order(i);
    }
    const auto sum_rng = [&](std::size_t lo, std::size_t hi) {
        return hi < lo ? 0.0 : S[hi] - S[lo - 1];
    };
    const auto isum_rng = [&](std::size_t lo, std::size_t hi) {
        return hi < lo ? 0.0 : T[hi] - T[lo - 1];
    };
    const auto X = [&](std::size_t i) { return sample.order(i); };

    const double rd = static_cast<double>(r);
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double mr = md - rd;

    StmHatPieces p;
    p.r = r;
    p.m = m;
    p.K = discrete_weights(n, spec).K;

    const double lower_ramp = (mr * X(m + 1) - sum_rng(r + 1, m)) / mr;
    p.e4 = lower_ramp + X(n - m) - X(m + 1) +
           ((rd - md) * X(n - m) + sum_rng(n - m + 1, n - r)) / mr;
    p.i_hat = ((md + md * rd / nd - rd - md * md / nd) * X(m + 1) -
               (1.0 + rd / nd) * sum_rng(r + 1, m) + (2.0 / nd) * isum_rng(r + 1, m) +
               (2.0 - rd / nd) * sum_rng(n - m + 1, n - r) +
               ((rd * md - md * md) / nd) * X(n - m) - (2.0 / nd) * isum_rng(n - m + 1, n - r)) /
                  mr +
              (sum_rng(m + 1, n - m) + md * X(n - m) + (md - nd) * X(m + 1)) / nd;

    p.e1.reserve(m - r);
    for (std::size_t i = r + 1; i <= m; ++i)
        p.e1.push_back(((static_cast<double>(i) - rd) * X(i) - sum_rng(r + 1, i)) / mr);

    p.e2.reserve(n - 2 * m);
    for (std::size_t i = m + 1; i <= n - m; ++i)
        p.e2.push_back(lower_ramp + X(i) - X(m + 1));

    p.e3.reserve(m - r);
    for (std::size_t i = n - m + 1; i <= n - r; ++i)
        p.e3.push_back(lower_ramp + X(n - m) - X(m + 1) +
                       ((nd - rd) * X(i) + (rd - md) * X(n - m) - static_cast<double>(i) * X(i) +
                        sum_rng(n - m + 1, i)) /
                           mr);
    return p;
}

VarianceEstimate stm_variance_hat(const SortedSample& sample, const WeightSpec& spec) {
    const StmHatPieces p = stm_hat_pieces(sample, spec);
    const double rd = static_cast<double>(p.r);
    double total = rd * sq(p.i_hat);
    for (double v : p.e1) total += sq(v - p.i_hat);
    for (double v : p.e2) total += sq(v - p.i_hat);
    for (double v : p.e3) total += sq(v - p.i_hat);
    total += rd * sq(p.e4 - p.i_hat);
    const double nd = static_cast<double>(sample.size());
    return {p.K * p.K * total / (nd * nd), VarianceMethod::STMAsymptotic,
            VarianceScale::EstimatorLevel};
}

VarianceEstimate jackknife_variance(const SortedSample& sample, const Estimator& estimator) {
    const std::size_t n = sample.size();
    if (n < 3) throw ParameterError("jackknife needs n >= 3");
    std::vector<double> loo(n);
    for (std::size_t i = 1; i <= n; ++i) loo[i - 1] = estimator(sample.without(i));
    const double mean = kahan_sum(loo) / static_cast<double>(n);
    double ss = 0.0;
    for (double v : loo) ss += sq(v - mean);
    const double value = (static_cast<double>(n - 1) / static_cast<double>(n)) * ss;
    return {value, VarianceMethod::Jackknife, VarianceScale::EstimatorLevel};
}

InfluenceContext::InfluenceContext(QuantileFn qf, const WeightSpec& spec)
    : qf_(std::move(qf)), alpha_(spec.alpha), gamma_(spec.gamma) {
    require_generalized(spec, "influence function");
    const double a = alpha_;
    const double g = gamma_;
    const double ga = g - a;
    xi_alpha_ = qf_(a);
    xi_gamma_ = qf_(g);
    xi_1mg_ = qf_(1.0 - g);
    xi_1ma_ = qf_(1.0 - a);
    const double int_a_g = integral(a, g);
    const double int_u_a_g = integral_u(a, g);
    const double int_g_1mg = integral(g, 1.0 - g);
    const double int_tail = integral(1.0 - g, 1.0 - a);
    const double int_u_tail = integral_u(1.0 - g, 1.0 - a);
    head_ = (ga * xi_gamma_ - int_a_g) / ga;
    i_ = ((g + a * g - g * g - a) * xi_gamma_ - (1.0 + a) * int_a_g + 2.0 * int_u_a_g +
          (2.0 - a) * int_tail + (a * g - g * g) * xi_1mg_ - 2.0 * int_u_tail) /
             ga +
         int_g_1mg + xi_1mg_ * g + xi_gamma_ * g - xi_gamma_;
    e4_ = head_ + xi_1mg_ - xi_gamma_ + ((a - g) * xi_1mg_ + int_tail) / ga;
}

double InfluenceContext::integral(double lo, double hi) const {
    return integrate(qf_.value, lo, hi, qf_.breakpoints);
}

double InfluenceContext::integral_u(double lo, double hi) const {
    return integrate([this](double u) { return u * qf_.value(u); }, lo, hi, qf_.breakpoints);
}

double InfluenceContext::e1_val(double u, double x) const {
    return ((u - alpha_) * x - integral(alpha_, u)) / (gamma_ - alpha_);
}

double InfluenceContext::e2_val(double x) const { return head_ + x - xi_gamma_; }

double InfluenceContext::e3_val(double u, double x) const {
    return head_ + xi_1mg_ - xi_gamma_ +
           ((1.0 - alpha_) * x + (alpha_ - gamma_) * xi_1mg_ - u * x +
            integral(1.0 - gamma_, u)) /
               (gamma_ - alpha_);
}

double InfluenceContext::value_at_u(double u) const {
    if (u < alpha_) return -i_;
    if (u < gamma_) return e1_val(u, qf_(u)) - i_;
    if (u <= 1.0 - gamma_) return e2_val(qf_(u)) - i_;
    if (u <= 1.0 - alpha_) return e3_val(u, qf_(u)) - i_;
    return e4_ - i_;
}

double InfluenceContext::invert_u(double x, double ulo, double uhi) const {
    for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (ulo + uhi);
        if (qf_(mid) <= x)
            ulo = mid;
        else
            uhi = mid;
    }
    return 0.5 * (ulo + uhi);
}

double InfluenceContext::value_at_x(double x) const {
    if (x < xi_alpha_) return -i_;
    if (x < xi_gamma_) return e1_val(invert_u(x, alpha_, gamma_), x) - i_;
    if (x <= xi_1mg_) return e2_val(x) - i_;
    if (x <= xi_1ma_) return e3_val(invert_u(x, 1.0 - gamma_, 1.0 - alpha_), x) - i_;
    return e4_ - i_;
}

double InfluenceContext::functional_variance() const {
    double total = alpha_ * sq(i_) + alpha_ * sq(e4_ - i_);
    total += integrate([this](double u) { return sq(e1_val(u, qf_(u)) - i_); }, alpha_, gamma_,
                       qf_.breakpoints);
    total += integrate([this](double u) { return sq(e2_val(qf_(u)) - i_); }, gamma_,
                       1.0 - gamma_, qf_.breakpoints);
    total += integrate([this](double u) { return sq(e3_val(u, qf_(u)) - i_); }, 1.0 - gamma_,
                       1.0 - alpha_, qf_.breakpoints);
    return total;
}

double influence_function(double x, const QuantileFn& qf, const WeightSpec& spec) {
    return InfluenceContext(qf, spec).value_at_x(x);
}

VarianceEstimate influence_variance_quadrature(const QuantileFn& qf, const WeightSpec& spec) {
    return {InfluenceContext(qf, spec).functional_variance(),
            VarianceMethod::TheoreticalQuadrature, VarianceScale::FunctionalLevel};
}

VarianceEstimate influence_variance_quadrature(const QuantileFn& qf, const WeightSpec& spec,
                                               std::size_t n) {
    return estimator_level(influence_variance_quadrature(qf, spec), n, spec.k_pop());
}

}  // namespace smoothtrim
