#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace smoothtrim {

/// Compensated (Kahan) summation.
double kahan_sum(std::span<const double> xs);

/// Compensated dot product of equal-length vectors.
double kahan_dot(std::span<const double> a, std::span<const double> b);

/// floor(n * frac) with a 1e-9 nudge so decimal fractions that are not exact
/// binary doubles (0.35 * 20 = 6.999...) land on the intended integer.
std::size_t trim_count(std::size_t n, double frac);

/// Type-7 (linear interpolation) quantile of ascending data.
double quantile_type7_sorted(std::span<const double> sorted, double p);

/// FNV-1a 64-bit hash; keys deterministic RNG streams by cell label.
std::uint64_t fnv1a64(std::string_view s);

}  // namespace smoothtrim
