#include "smoothtrim/weights.hpp"

#include <algorithm>
#include <cmath>

#include "smoothtrim/error.hpp"
#include "smoothtrim/numeric.hpp"

namespace smoothtrim {

WeightSpec WeightSpec::generalized(double alpha, double gamma) {
    WeightSpec spec{WeightKind::Generalized, alpha, gamma};
    spec.validate();
    return spec;
}

WeightSpec WeightSpec::triangular(double alpha) {
    WeightSpec spec{WeightKind::Triangular, alpha, 0.5};
    spec.validate();
    return spec;
}

WeightSpec WeightSpec::stigler_trapezoid(double alpha) {
    WeightSpec spec{WeightKind::StiglerTrapezoid, alpha, alpha};
    spec.validate();
    return spec;
}

WeightSpec WeightSpec::hard_trim(double alpha) {
    WeightSpec spec{WeightKind::HardTrim, alpha, alpha};
    spec.validate();
    return spec;
}

void WeightSpec::validate() const {
    if (!std::isfinite(alpha) || alpha < 0.0 || alpha >= 0.5)
        throw ParameterError("alpha must lie in [0, 0.5)");
    if (kind == WeightKind::Generalized) {
        if (!std::isfinite(gamma) || gamma <= alpha || gamma > 0.5)
            throw ParameterError("gamma must lie in (alpha, 0.5] for the generalized family");
    }
}

double WeightSpec::weight_integral() const {
    switch (kind) {
        case WeightKind::Generalized: return 1.0 - alpha - gamma;
        case WeightKind::Triangular: return 0.5 - alpha;
        case WeightKind::StiglerTrapezoid: return 1.0;
        case WeightKind::HardTrim: return 1.0 - 2.0 * alpha;
    }
    return 0.0;
}

double WeightSpec::k_pop() const { return 1.0 / weight_integral(); }

std::vector<double> WeightSpec::breakpoints() const {
    switch (kind) {
        case WeightKind::Generalized: return {alpha, gamma, 1.0 - gamma, 1.0 - alpha};
        case WeightKind::Triangular: return {alpha, 0.5, 1.0 - alpha};
        case WeightKind::StiglerTrapezoid:
            return {0.5 * alpha, alpha, 1.0 - alpha, 1.0 - 0.5 * alpha};
        case WeightKind::HardTrim: return {alpha, 1.0 - alpha};
    }
    return {};
}

const char* WeightSpec::kind_name() const {
    switch (kind) {
        case WeightKind::Generalized: return "generalized";
        case WeightKind::Triangular: return "triangular";
        case WeightKind::StiglerTrapezoid: return "stigler-trapezoid";
        case WeightKind::HardTrim: return "hard-trim";
    }
    return "?";
}

double eval_weight(double u, const WeightSpec& spec) {
    spec.validate();
    const double a = spec.alpha;
    switch (spec.kind) {
        case WeightKind::Generalized: {
            const double g = spec.gamma;
            if (u < a || u > 1.0 - a) return 0.0;
            if (u >= g && u <= 1.0 - g) return 1.0;
            const double ramp = (u < g) ? (u - a) / (g - a) : (1.0 - u - a) / (g - a);
            return std::clamp(ramp, 0.0, 1.0);
        }
        case WeightKind::Triangular: {
            if (u < a || u > 1.0 - a) return 0.0;
            const double ramp = (u <= 0.5) ? (u - a) / (0.5 - a) : (1.0 - u - a) / (0.5 - a);
            return std::clamp(ramp, 0.0, 1.0);
        }
        case WeightKind::StiglerTrapezoid: {
            if (a == 0.0) return (u >= 0.0 && u <= 1.0) ? 1.0 : 0.0;
            if (u < 0.5 * a || u > 1.0 - 0.5 * a) return 0.0;
            const double h = 2.0 / (2.0 - 3.0 * a);
            if (u <= a) return std::clamp((u - 0.5 * a) * 2.0 * h / a, 0.0, h);
            if (u < 1.0 - a) return h;
            return std::clamp((1.0 - 0.5 * a - u) * 2.0 * h / a, 0.0, h);
        }
        case WeightKind::HardTrim:
            return (u > a && u < 1.0 - a) ? 1.0 : 0.0;
    }
    return 0.0;
}

DiscreteWeights discrete_weights(std::size_t n, const WeightSpec& spec) {
    spec.validate();
    if (n < 4) throw ParameterError("discrete weights need n >= 4");
    DiscreteWeights out;
    out.raw.resize(n);
    for (std::size_t i = 1; i <= n; ++i)
        out.raw[i - 1] = eval_weight(static_cast<double>(i) / static_cast<double>(n + 1), spec);
    out.raw_sum = kahan_sum(out.raw);
    if (!(out.raw_sum > 0.0))
        throw DegenerateInput("all discrete weights are zero for this (n, spec)");
    out.K = static_cast<double>(n) / out.raw_sum;
    out.normalized.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.normalized[i] = out.raw[i] / out.raw_sum;
    out.support_lo = 0;
    out.support_hi = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (out.raw[i - 1] > 0.0) {
            if (out.support_lo == 0) out.support_lo = i;
            out.support_hi = i;
        }
    }
    return out;
}

}  // namespace smoothtrim
