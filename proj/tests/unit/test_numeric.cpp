#include <cmath>
#include <vector>

#include "doctest.h"
#include "smoothtrim/error.hpp"
#include "smoothtrim/numeric.hpp"
#include "smoothtrim/quadrature.hpp"
#include "smoothtrim/rng.hpp"
#include "smoothtrim/special.hpp"

using namespace smoothtrim;

TEST_CASE("trim_count floors with decimal-fraction nudge") {
    CHECK(trim_count(10, 0.1) == 1);
    CHECK(trim_count(4, 0.25) == 1);
    CHECK(trim_count(50, 0.1) == 5);
    CHECK(trim_count(20, 0.35) == 7);  // 20*0.35 = 6.999... in binary
    CHECK(trim_count(19, 0.1) == 1);
    CHECK(trim_count(100, 0.0) == 0);
}

TEST_CASE("kahan sum and dot") {
    std::vector<double> small(1000, 1e-16);
    small.insert(small.begin(), 1.0);
    CHECK(kahan_sum(small) == doctest::Approx(1.0 + 1e-13).epsilon(1e-15));
    std::vector<double> a{1.0, 2.0, 3.0}, b{4.0, 5.0, 6.0};
    CHECK(kahan_dot(a, b) == 32.0);
    CHECK_THROWS_AS(kahan_dot(a, std::vector<double>{1.0}), ParameterError);
}

TEST_CASE("type-7 quantile matches linear interpolation") {
    std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    CHECK(quantile_type7_sorted(xs, 0.0) == 1.0);
    CHECK(quantile_type7_sorted(xs, 1.0) == 4.0);
    CHECK(quantile_type7_sorted(xs, 0.5) == doctest::Approx(2.5));
    CHECK(quantile_type7_sorted(xs, 1.0 / 3.0) == doctest::Approx(2.0));
}

TEST_CASE("normal quantile and cdf") {
    CHECK(normal_quantile(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(normal_quantile(0.5) == 0.0);
    for (double p : {0.01, 0.1, 0.3, 0.7, 0.95, 0.999})
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    CHECK_THROWS_AS(normal_quantile(0.0), ParameterError);
}

TEST_CASE("chi-squared quantiles: table and incomplete-gamma fallback agree") {
    CHECK(chi_squared_quantile(0.95, 1) == doctest::Approx(3.841458820694124).epsilon(1e-14));
    CHECK(chi_squared_quantile(0.90, 1) == doctest::Approx(2.705543454095404).epsilon(1e-14));
    CHECK(chi_squared_quantile(0.99, 1) == doctest::Approx(6.634896601021214).epsilon(1e-14));
    // non-table levels go through Newton; z^2 identity for 1 dof
    const double z = normal_quantile(0.5 * (1.0 + 0.975));
    CHECK(chi_squared_quantile(0.975, 1) == doctest::Approx(z * z).epsilon(1e-10));
    CHECK(chi_squared_quantile(0.95, 2) == doctest::Approx(5.991464547107979).epsilon(1e-10));
}

TEST_CASE("t quantiles via incomplete beta") {
    CHECK(student_t_quantile(0.975, 2) == doctest::Approx(4.302652729696142).epsilon(1e-9));
    CHECK(student_t_quantile(0.025, 2) == doctest::Approx(-4.302652729696142).epsilon(1e-9));
    CHECK(student_t_quantile(0.5, 7) == 0.0);
    // large dof converges to the normal quantile
    CHECK(student_t_quantile(0.975, 10000) ==
          doctest::Approx(normal_quantile(0.975)).epsilon(1e-3));
}

TEST_CASE("incomplete beta basics") {
    CHECK(incomplete_beta(1.0, 1.0, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(incomplete_beta(2.0, 3.0, 0.0) == 0.0);
    CHECK(incomplete_beta(2.0, 3.0, 1.0) == 1.0);
    CHECK(incomplete_beta(2.5, 1.5, 0.4) + incomplete_beta(1.5, 2.5, 0.6) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("quadrature: polynomials, breakpoints, failure path") {
    CHECK(integrate([](double u) { return 3.0 * u * u; }, 0.0, 1.0) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(integrate([](double u) { return std::sin(u); }, 0.0, 3.141592653589793) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // step function integrated exactly once split at its jump
    std::vector<double> bps{0.5};
    const auto step = [](double u) { return u < 0.5 ? 1.0 : 3.0; };
    CHECK(integrate(step, 0.0, 1.0, bps) == doctest::Approx(2.0).epsilon(1e-14));
    // reversed limits flip the sign
    CHECK(integrate(step, 1.0, 0.0, bps) == doctest::Approx(-2.0).epsilon(1e-14));
    // integrable singularity cannot converge with a tiny depth budget
    QuadratureOptions opt;
    opt.max_depth = 3;
    opt.abs_tol = 1e-14;
    CHECK_THROWS_AS(integrate([](double u) { return std::pow(u, -0.9); }, 1e-300, 1.0, {}, opt),
                    NumericError);
}

TEST_CASE("rng determinism and stream separation") {
    Rng a(42), b(42), c(43);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    bool differs = false;
    Rng a2(42);
    for (int i = 0; i < 10; ++i) differs |= (a2.next_u64() != c.next_u64());
    CHECK(differs);
    CHECK(Rng::derive(1, 2, 3) != Rng::derive(1, 3, 2));
    CHECK(Rng::derive(1, 2, 3) == Rng::derive(1, 2, 3));

    Rng r(7);
    double mean = 0.0, sq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double z = r.next_normal();
        mean += z;
        sq += z * z;
    }
    mean /= n;
    sq /= n;
    CHECK(std::abs(mean) < 0.01);
    CHECK(sq == doctest::Approx(1.0).epsilon(0.02));

    Rng u(11);
    for (int i = 0; i < 1000; ++i) {
        const double v = u.next_uniform_oc();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}
