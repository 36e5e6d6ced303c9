#include "smoothtrim/numeric.hpp"

#include <cmath>

#include "smoothtrim/error.hpp"

namespace smoothtrim {

double kahan_sum(std::span<const double> xs) {
    double sum = 0.0;
    double c = 0.0;
    for (double x : xs) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

double kahan_dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw ParameterError("kahan_dot: size mismatch");
    double sum = 0.0;
    double c = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double y = a[i] * b[i] - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
    return sum;
}

std::size_t trim_count(std::size_t n, double frac) {
    const double v = std::floor(static_cast<double>(n) * frac + 1e-9);
    return v <= 0.0 ? 0 : static_cast<std::size_t>(v);
}

double quantile_type7_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ParameterError("quantile of empty data");
    if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("quantile level outside [0,1]");
    if (sorted.size() == 1) return sorted[0];
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace smoothtrim
