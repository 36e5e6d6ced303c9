#include "smoothtrim/elikelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "smoothtrim/error.hpp"
#include "smoothtrim/numeric.hpp"
#include "smoothtrim/special.hpp"
#include "smoothtrim/variance.hpp"

namespace smoothtrim {

ELContext::ELContext(const SortedSample& sample, const WeightSpec& spec) {
    spec.validate();
    const std::size_t n = sample.size();
    r_ = trim_count(n, spec.alpha);
    if (n < 2 * r_ + 2) throw ParameterError("over-trim: need at least two retained values");
    m_el_ = n - 2 * r_;

    const DiscreteWeights dw = discrete_weights(n, spec);
    x_.assign(sample.values().begin() + static_cast<std::ptrdiff_t>(r_),
              sample.values().end() - static_cast<std::ptrdiff_t>(r_));
    w_.assign(dw.normalized.begin() + static_cast<std::ptrdiff_t>(r_),
              dw.normalized.end() - static_cast<std::ptrdiff_t>(r_));
    // The weight support always sits inside the trimmed index range, so this
    // renormalization is a no-op up to rounding; it pins sum(w) = 1 exactly.
    const double wsum = kahan_sum(w_);
    if (!(wsum > 0.0)) throw DegenerateInput("no weight mass on the trimmed range");
    for (double& w : w_) w /= wsum;

    point_ = kahan_dot(w_, x_);

    const double d_hat = stm_variance_hat(sample, spec).value;
    double sigma2 = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i)
        sigma2 += w_[i] * (x_[i] - point_) * (x_[i] - point_);
    if (!(d_hat > 0.0) || !(sigma2 > 0.0))
        throw DegenerateInput("zero variance estimate on the trimmed range");
    a_hat_ = sigma2 / ((1.0 - 2.0 * spec.alpha) * d_hat * static_cast<double>(n));

    data_lo_ = sample.order(r_ + 1);
    data_hi_ = sample.order(n - r_);
    hull_lo_ = std::numeric_limits<double>::infinity();
    hull_hi_ = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x_.size(); ++i) {
        if (w_[i] > 0.0) {
            hull_lo_ = std::min(hull_lo_, x_[i]);
            hull_hi_ = std::max(hull_hi_, x_[i]);
        }
    }
    full_range_ = sample.range();
}

double solve_lambda(std::span<const double> W, std::span<const double> w) {
    if (W.size() != w.size() || W.empty())
        throw ParameterError("solve_lambda needs equal-length nonempty W and w");
    std::vector<double> vs, ws;
    vs.reserve(W.size());
    ws.reserve(W.size());
    for (std::size_t i = 0; i < W.size(); ++i) {
        if (w[i] < 0.0) throw ParameterError("weights must be nonnegative");
        if (w[i] > 0.0) {
            vs.push_back(W[i]);
            ws.push_back(w[i]);
        }
    }
    if (vs.empty()) throw DegenerateInput("all weights are zero");
    double lo_w = vs[0], hi_w = vs[0];
    for (double v : vs) {
        lo_w = std::min(lo_w, v);
        hi_w = std::max(hi_w, v);
    }
    if (!(lo_w < 0.0 && hi_w > 0.0))
        throw NoRootError("mu outside the convex hull of the weighted values");

    // Rescale W to unit magnitude so the residual target is scale-free; the
    // root maps back as lambda = lambda_scaled / scale.
    const double scale = std::max(std::abs(lo_w), std::abs(hi_w));
    for (double& v : vs) v /= scale;
    double blo = -1.0 / (hi_w / scale);
    double bhi = -1.0 / (lo_w / scale);
    const double guard = 1e-12 * (bhi - blo);
    blo += guard;
    bhi -= guard;

    const auto eval = [&](double lam, double& deriv) {
        double sum = 0.0, dsum = 0.0;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const double denom = 1.0 + lam * vs[i];
            const double t = ws[i] * vs[i] / denom;
            sum += t;
            dsum -= t * vs[i] / denom;
        }
        deriv = dsum;
        return sum;
    };

    // g decreases from +inf to -inf on (blo, bhi): safeguarded Newton.
    double lam = 0.0;
    double deriv = 0.0;
    double val = eval(lam, deriv);
    double best_lam = lam;
    double best_val = std::abs(val);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(val) <= 1e-14) break;
        if (val > 0.0)
            blo = lam;
        else
            bhi = lam;
        double next = (deriv < 0.0) ? lam - val / deriv : 0.5 * (blo + bhi);
        if (!(next > blo && next < bhi)) next = 0.5 * (blo + bhi);
        if (next == lam) break;
        lam = next;
        val = eval(lam, deriv);
        if (std::abs(val) < best_val) {
            best_val = std::abs(val);
            best_lam = lam;
        }
    }
    if (std::abs(val) > best_val) lam = best_lam;
    return lam / scale;
}

double el_log_ratio_centered(std::span<const double> W, std::span<const double> w,
                             std::size_t m) {
    const double lambda = solve_lambda(W, w);
    double acc = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i)
        if (w[i] > 0.0) acc += w[i] * std::log1p(lambda * W[i]);
    const double log_ratio = 2.0 * static_cast<double>(m) * acc;
    return log_ratio < 0.0 ? 0.0 : log_ratio;
}

ELContext::Eval ELContext::eval(double mu) const {
    if (!(mu > hull_lo_ && mu < hull_hi_))
        throw NoRootError("mu outside the trimmed data range");
    std::vector<double> W(x_.size());
    for (std::size_t i = 0; i < x_.size(); ++i) W[i] = x_[i] - mu;
    const double lambda = solve_lambda(W, w_);
    double acc = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i)
        if (w_[i] > 0.0) acc += w_[i] * std::log1p(lambda * W[i]);
    double log_ratio = 2.0 * static_cast<double>(m_el_) * acc;
    if (log_ratio < 0.0) log_ratio = 0.0;
    return {lambda, log_ratio, a_hat_ * log_ratio};
}

ELResult el_log_ratio(const SortedSample& sample, const WeightSpec& spec, double mu) {
    const ELContext ctx(sample, spec);
    const auto ev = ctx.eval(mu);
    ELResult out;
    out.lambda = ev.lambda;
    out.log_ratio = ev.log_ratio;
    out.scaled = ev.scaled;
    out.a_hat = ctx.a_hat();
    const auto x = ctx.trimmed_values();
    const auto w = ctx.weights();
    out.probabilities.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        out.probabilities[i] = w[i] > 0.0 ? w[i] / (1.0 + ev.lambda * (x[i] - mu)) : 0.0;
    return out;
}

double scaling_constant_hat(const SortedSample& sample, const WeightSpec& spec) {
    return ELContext(sample, spec).a_hat();
}

ELInterval el_confidence_interval_detail(const SortedSample& sample, const WeightSpec& spec,
                                         double level) {
    if (!(level > 0.5 && level < 1.0)) throw ParameterError("EL level must lie in (0.5, 1)");
    const ELContext ctx(sample, spec);
    const double threshold = chi_squared_quantile(level, 1.0);
    const double eps = 1e-9 * ctx.full_range();
    const double lo_bound = std::max(ctx.data_lo(), ctx.hull_lo()) + eps;
    const double hi_bound = std::min(ctx.data_hi(), ctx.hull_hi()) - eps;
    const double point = ctx.point();
    if (!(lo_bound < point && point < hi_bound))
        throw DegenerateInput("trimmed range collapses around the point estimate");

    const auto scaled_at = [&](double mu) {
        try {
            return ctx.eval(mu).scaled;
        } catch (const NoRootError&) {
            return std::numeric_limits<double>::infinity();
        }
    };

    const double width_tol = 1e-10 * ctx.full_range();
    bool clipped = false;

    double upper = hi_bound;
    if (scaled_at(hi_bound) < threshold) {
        clipped = true;
    } else {
        double a = point, b = hi_bound;
        while (b - a > width_tol) {
            const double mid = 0.5 * (a + b);
            if (scaled_at(mid) >= threshold)
                b = mid;
            else
                a = mid;
        }
        upper = 0.5 * (a + b);
    }

    double lower = lo_bound;
    if (scaled_at(lo_bound) < threshold) {
        clipped = true;
    } else {
        double a = lo_bound, b = point;
        while (b - a > width_tol) {
            const double mid = 0.5 * (a + b);
            if (scaled_at(mid) >= threshold)
                a = mid;
            else
                b = mid;
        }
        lower = 0.5 * (a + b);
    }

    ELInterval out;
    out.ci = {lower, upper, level, CIMethod::ELMethod, point, clipped};
    out.a_hat = ctx.a_hat();
    out.lambda_lower = ctx.eval(lower).lambda;
    out.lambda_upper = ctx.eval(upper).lambda;
    return out;
}

ConfidenceInterval el_confidence_interval(const SortedSample& sample, const WeightSpec& spec,
                                          double level) {
    return el_confidence_interval_detail(sample, spec, level).ci;
}

}  // namespace smoothtrim
