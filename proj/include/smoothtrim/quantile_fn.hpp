#pragma once

#include <functional>
#include <vector>

#include "smoothtrim/sample.hpp"

namespace smoothtrim {

/// Quantile function on (0,1) together with its interior discontinuities so
/// integrals can be split exactly at the steps.
struct QuantileFn {
    std::function<double(double)> value;
    std::vector<double> breakpoints;

    double operator()(double u) const { return value(u); }
};

/// Left-continuous empirical quantile function F_n^{-1}(u) = X_(ceil(n u)),
/// with breakpoints at k/n.
QuantileFn empirical_quantile_fn(const SortedSample&);

}  // namespace smoothtrim
