#include <cmath>
#include <vector>

#include "doctest.h"
#include "smoothtrim/distributions.hpp"
#include "smoothtrim/error.hpp"
#include "smoothtrim/estimators.hpp"

using namespace smoothtrim;

namespace {

MixtureModel three_point() {
    return MixtureModel({{0.1, -10.0, 1.0}, {0.8, 0.0, 1.0}, {0.1, 10.0, 1.0}});
}

}  // namespace

TEST_CASE("mixture cdf symmetry and limits") {
    const auto m = three_point();
    CHECK(m.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.cdf(-1e6) == doctest::Approx(0.0));
    CHECK(m.cdf(1e6) == doctest::Approx(1.0));
    const MixtureModel scale({{0.9, 0.0, 1.0}, {0.1, 0.0, 5.0}});
    CHECK(scale.cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("mixture quantile inverts the cdf") {
    const auto m = three_point();
    for (int i = 1; i <= 99; ++i) {
        const double p = i / 100.0;
        CHECK(m.cdf(m.quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK(std::abs(m.quantile(0.5)) <= 1e-10);
    // monotone in p
    double prev = m.quantile(0.01);
    for (int i = 2; i <= 99; ++i) {
        const double q = m.quantile(i / 100.0);
        CHECK(q >= prev);
        prev = q;
    }
    CHECK_THROWS_AS(m.quantile(0.0), ParameterError);
    CHECK_THROWS_AS(m.quantile(1.0), ParameterError);
}

TEST_CASE("well-separated components leave a wide gap at the 0.1 quantile") {
    const auto m = three_point();
    CHECK(std::abs(m.quantile(0.100001) - m.quantile(0.099999)) > 1.0);
    CHECK(std::abs(m.quantile(0.900001) - m.quantile(0.899999)) > 1.0);
}

TEST_CASE("sampling is deterministic per seed") {
    const auto m = three_point();
    const auto a = m.sample(500, 99);
    const auto b = m.sample(500, 99);
    const auto c = m.sample(500, 100);
    CHECK(a.values() == b.values());
    CHECK(a.values() != c.values());
}

TEST_CASE("sample moments and component frequencies") {
    const MixtureModel m = MixtureModel::parse("0.8*N(0,1)+0.2*N(0,25)");
    const auto s = m.sample(1000000, 4242);
    double mean = 0.0;
    for (double x : s.values()) mean += x;
    mean /= static_cast<double>(s.size());
    CHECK(std::abs(mean) <= 0.02);

    // component frequencies via a two-component location mixture
    const MixtureModel loc = MixtureModel::parse("0.2*N(-50,1)+0.8*N(0,1)");
    const auto t = loc.sample(100000, 7);
    std::size_t low = 0;
    for (double x : t.values())
        if (x < -25.0) ++low;
    CHECK(std::abs(static_cast<double>(low) / 100000.0 - 0.2) <= 0.01);
}

TEST_CASE("mixture parsing round trip and errors") {
    const auto m = MixtureModel::parse(" 0.9*N(0,1) + 0.1*N(0,25) ");
    CHECK(m.components().size() == 2);
    CHECK(m.components()[1].sd == doctest::Approx(5.0));
    const auto again = MixtureModel::parse(m.to_string());
    CHECK(again.components()[1].sd == doctest::Approx(5.0));
    CHECK_THROWS_AS(MixtureModel::parse(""), ParameterError);
    CHECK_THROWS_AS(MixtureModel::parse("0.5*N(0,1)"), ParameterError);         // weights != 1
    CHECK_THROWS_AS(MixtureModel::parse("1.0*N(0,-1)"), ParameterError);        // variance <= 0
    CHECK_THROWS_AS(MixtureModel::parse("1.0*G(0,1)"), ParameterError);         // bad term
    CHECK_THROWS_AS(MixtureModel::parse("0.9*N(0,1)+0.1*N(0,25)+"), ParameterError);
}

TEST_CASE("population target of the normalized STM") {
    const auto spec = WeightSpec::generalized(0.1, 0.2);
    CHECK(std::abs(stm_true_mean(three_point(), spec)) <= 1e-9);

    QuantileFn uniform;
    uniform.value = [](double u) { return u; };
    CHECK(stm_true_mean(uniform, spec) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(stm_true_mean(uniform, WeightSpec::hard_trim(0.25)) ==
          doctest::Approx(0.5).epsilon(1e-9));

    // consistency: the estimate on a large sample approaches the target
    const MixtureModel first = MixtureModel::parse("0.9*N(0,1)+0.1*N(0,25)");
    const auto s = first.sample(100000, 321);
    CHECK(std::abs(smoothly_trimmed_mean(s, spec).value - stm_true_mean(first, spec)) <= 0.01);
}

TEST_CASE("mixture validation") {
    CHECK_THROWS_AS(MixtureModel({}), ParameterError);
    CHECK_THROWS_AS(MixtureModel({{0.5, 0.0, 1.0}, {0.6, 0.0, 1.0}}), ParameterError);
    CHECK_THROWS_AS(MixtureModel({{1.0, 0.0, 0.0}}), ParameterError);
}
