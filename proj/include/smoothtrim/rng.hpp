#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>

namespace smoothtrim {

/// Deterministic generator with the splitmix64 state transition
/// (state += 0x9E3779B97F4A7C15; xor-shift-multiply output finalizer).
/// Normal deviates use the standard Box-Muller transform on (0,1] uniforms;
/// each pair of uniforms yields two normals, the second is cached. For a
/// given seed the sequence is identical on every conforming platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform on (0, 1]; never 0, so it is safe inside log().
    double next_uniform_oc() { return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53; }

    /// Uniform on [0, 1).
    double next_uniform_co() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Standard normal deviate (Box-Muller).
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = next_uniform_oc();
        const double u2 = next_uniform_oc();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * kPi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    /// Uniform index in [0, n).
    std::size_t next_index(std::size_t n) {
        auto idx = static_cast<std::size_t>(next_uniform_co() * static_cast<double>(n));
        return idx < n ? idx : n - 1;
    }

    /// Independent stream keyed by (seed, a, b): three chained splitmix64
    /// finalizer applications. Gives every (study cell, replicate) its own
    /// generator so adding cells never perturbs existing ones.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
        std::uint64_t h = finalize(seed + 0x9E3779B97F4A7C15ull);
        h = finalize(h + a);
        h = finalize(h + b);
        return h;
    }

  private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;

    static std::uint64_t finalize(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace smoothtrim
