#include "smoothtrim/sample.hpp"

#include <algorithm>
#include <cmath>

#include "smoothtrim/error.hpp"

namespace smoothtrim {

SortedSample::SortedSample(std::vector<double> values) {
    if (values.empty()) throw ParameterError("sample must not be empty");
    for (double v : values)
        if (!std::isfinite(v)) throw ParameterError("sample contains a non-finite value");
    std::sort(values.begin(), values.end());
    values_ = std::move(values);
}

SortedSample SortedSample::from_sorted(std::vector<double> values) {
    SortedSample s;
    s.values_ = std::move(values);
    return s;
}

SortedSample SortedSample::without(std::size_t i) const {
    if (i < 1 || i > size()) throw ParameterError("order-statistic index out of range");
    if (size() < 2) throw ParameterError("cannot remove the only observation");
    std::vector<double> v;
    v.reserve(size() - 1);
    v.insert(v.end(), values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(i - 1));
    v.insert(v.end(), values_.begin() + static_cast<std::ptrdiff_t>(i), values_.end());
    return from_sorted(std::move(v));
}

}  // namespace smoothtrim
