#pragma once

#include <functional>
#include <span>

namespace smoothtrim {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    int max_depth = 30;
};

/// Composite adaptive 15-point Gauss-Legendre integration of f over [a, b].
/// The interval is split at the interior breakpoints first, so piecewise
/// integrands (step quantile functions, weight-ramp corners) are integrated
/// exactly segment by segment. Throws NumericError when a segment cannot
/// reach tolerance within the depth budget.
double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints = {},
                 const QuadratureOptions& opt = {});

}  // namespace smoothtrim
