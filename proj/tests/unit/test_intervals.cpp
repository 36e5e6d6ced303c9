#include <cmath>
#include <vector>

#include "doctest.h"
#include "smoothtrim/distributions.hpp"
#include "smoothtrim/error.hpp"
#include "smoothtrim/intervals.hpp"
#include "smoothtrim/rng.hpp"

using namespace smoothtrim;

namespace {

EstimateResult point_estimate(double v) {
    EstimateResult e;
    e.value = v;
    return e;
}

VarianceEstimate est_var(double v) {
    return {v, VarianceMethod::STMAsymptotic, VarianceScale::EstimatorLevel};
}

}  // namespace

TEST_CASE("normal interval") {
    const auto ci = normal_ci(point_estimate(0.0), est_var(1.0), 0.95);
    CHECK(ci.lower == doctest::Approx(-1.959964).epsilon(1e-6));
    CHECK(ci.upper == doctest::Approx(1.959964).epsilon(1e-6));

    const auto tight = normal_ci(point_estimate(5.0), est_var(0.0), 0.95);
    CHECK(tight.lower == 5.0);
    CHECK(tight.upper == 5.0);

    const auto w95 = normal_ci(point_estimate(0.0), est_var(2.0), 0.95);
    const auto w99 = normal_ci(point_estimate(0.0), est_var(2.0), 0.99);
    CHECK(w99.upper - w99.lower > w95.upper - w95.lower);

    const VarianceEstimate functional{1.0, VarianceMethod::TMAsymptotic,
                                      VarianceScale::FunctionalLevel};
    CHECK_THROWS_AS(normal_ci(point_estimate(0.0), functional, 0.95), ParameterError);
}

TEST_CASE("bootstrap percentile interval") {
    const MixtureModel m({{1.0, 0.0, 1.0}});
    const auto s = m.sample(100, 5);
    const auto est = make_stm_estimator(WeightSpec::generalized(0.1, 0.2));
    const auto a = bootstrap_percentile_ci(s, est, 0.95, 500, 777);
    const auto b = bootstrap_percentile_ci(s, est, 0.95, 500, 777);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    const auto c = bootstrap_percentile_ci(s, est, 0.95, 500, 778);
    CHECK((a.lower != c.lower || a.upper != c.upper));
    CHECK(a.lower <= a.upper);

    const SortedSample constant(std::vector<double>(50, 3.5));
    const auto z = bootstrap_percentile_ci(constant, make_mean_estimator(), 0.95, 300, 1);
    CHECK(z.lower == 3.5);
    CHECK(z.upper == 3.5);

    CHECK_THROWS_AS(bootstrap_percentile_ci(s, est, 0.95, 100, 1), ParameterError);
}

TEST_CASE("student-t interval") {
    const SortedSample s(std::vector<double>{1, 2, 3});
    const auto ci = student_t_ci(s, 0.95);
    CHECK(ci.point == doctest::Approx(2.0));
    CHECK(ci.lower == doctest::Approx(-0.484).epsilon(2e-3));
    CHECK(ci.upper == doctest::Approx(4.484).epsilon(2e-3));

    const SortedSample constant(std::vector<double>(10, 7.0));
    const auto z = student_t_ci(constant, 0.95);
    CHECK(z.lower == 7.0);
    CHECK(z.upper == 7.0);

    // t converges to the normal width for large n
    Rng rng(12);
    std::vector<double> big(10000);
    for (auto& x : big) x = rng.next_normal();
    const SortedSample bs(std::move(big));
    const auto tci = student_t_ci(bs, 0.95);
    const double mean = tci.point;
    double ss = 0.0;
    for (double x : bs.values()) ss += (x - mean) * (x - mean);
    const double se = std::sqrt(ss / 9999.0 / 10000.0);
    const double zwidth = 2.0 * 1.959963984540054 * se;
    CHECK(tci.upper - tci.lower == doctest::Approx(zwidth).epsilon(0.01));

    CHECK_THROWS_AS(student_t_ci(SortedSample(std::vector<double>{1.0}), 0.95), ParameterError);
}

TEST_CASE("affine equivariance of normal and t intervals") {
    Rng rng(3);
    std::vector<double> xs(40);
    for (auto& x : xs) x = rng.next_normal() * 2.0 + 1.0;
    const SortedSample s(xs);
    const double a = 2.5, b = -3.0;
    std::vector<double> mapped;
    for (double x : xs) mapped.push_back(a * x + b);
    const SortedSample t(mapped);

    const auto t1 = student_t_ci(s, 0.95);
    const auto t2 = student_t_ci(t, 0.95);
    CHECK(t2.lower == doctest::Approx(a * t1.lower + b).epsilon(1e-9));
    CHECK(t2.upper == doctest::Approx(a * t1.upper + b).epsilon(1e-9));

    const auto spec = WeightSpec::generalized(0.1, 0.25);
    const auto n1 = normal_ci(smoothly_trimmed_mean(s, spec), stm_variance_hat(s, spec), 0.95);
    const auto n2 = normal_ci(smoothly_trimmed_mean(t, spec), stm_variance_hat(t, spec), 0.95);
    CHECK(n2.lower == doctest::Approx(a * n1.lower + b).epsilon(1e-9));
    CHECK(n2.upper == doctest::Approx(a * n1.upper + b).epsilon(1e-9));
}

TEST_CASE("bootstrap STM interval covers the center about 95% of the time") {
    const MixtureModel m({{1.0, 0.0, 1.0}});
    const auto est = make_stm_estimator(WeightSpec::generalized(0.1, 0.2));
    int hits = 0;
    const int outer = 1000;
    for (int rep = 0; rep < outer; ++rep) {
        const auto s = m.sample(100, Rng::derive(2026, 1, static_cast<std::uint64_t>(rep)));
        const auto ci = bootstrap_percentile_ci(s, est, 0.95, 2000,
                                                Rng::derive(2026, 2, static_cast<std::uint64_t>(rep)));
        if (ci.lower <= 0.0 && 0.0 <= ci.upper) ++hits;
    }
    const double coverage = static_cast<double>(hits) / outer;
    CHECK(coverage >= 0.92);
    CHECK(coverage <= 0.97);
}
