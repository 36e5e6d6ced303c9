#include "smoothtrim/quantile_fn.hpp"

#include <cmath>
#include <memory>

namespace smoothtrim {

QuantileFn empirical_quantile_fn(const SortedSample& sample) {
    auto data = std::make_shared<std::vector<double>>(sample.values());
    const std::size_t n = data->size();
    QuantileFn fn;
    // The 1e-9 nudge keeps ceil(n*u) stable when u sits on a step boundary
    // that is not an exact binary double.
    fn.value = [data, n](double u) {
        double k = std::ceil(static_cast<double>(n) * u - 1e-9);
        if (k < 1.0) k = 1.0;
        auto idx = static_cast<std::size_t>(k);
        if (idx > n) idx = n;
        return (*data)[idx - 1];
    };
    fn.breakpoints.reserve(n > 0 ? n - 1 : 0);
    for (std::size_t k = 1; k < n; ++k)
        fn.breakpoints.push_back(static_cast<double>(k) / static_cast<double>(n));
    return fn;
}

}  // namespace smoothtrim
