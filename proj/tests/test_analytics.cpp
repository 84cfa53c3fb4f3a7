#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tabp/analytics.hpp"

using namespace tabp;

namespace {

ClosedForms forms(double lambda, GrainDistribution d) {
    ModelParams p;
    p.lambda = lambda;
    p.dist = std::move(d);
    return ClosedForms(p);
}

const double e = std::exp(1.0);

}  // namespace

TEST_CASE("vacancy probability") {
    const auto cf = forms(1.0, GrainDistribution::pareto(1.0));
    CHECK(cf.vacancy_probability(0.0) == 1.0);
    CHECK(forms(2.5, GrainDistribution::exponential(3.0)).vacancy_probability(0.0) == 1.0);
    CHECK(cf.vacancy_probability(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(cf.vacancy_probability(e * e) == doctest::Approx(std::exp(-3.0)).epsilon(1e-14));
    CHECK_THROWS_AS(cf.vacancy_probability(-1.0), std::invalid_argument);
}

TEST_CASE("vacancy probability tends to one minus the covered volume fraction") {
    for (const auto& d : {GrainDistribution::exponential(1.0), GrainDistribution::constant(2.0),
                          GrainDistribution::pareto(3.0)}) {
        const auto cf = forms(1.3, d);
        const double t = 1e3 * d.mean().value();
        CHECK(std::abs(cf.vacancy_probability(t) - (1.0 - cf.covered_volume_fraction())) <= 1e-6);
    }
}

TEST_CASE("covered volume fraction") {
    CHECK(forms(1.0, GrainDistribution::exponential(1.0)).covered_volume_fraction() ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-15));
    for (double lambda : {0.1, 1.0, 7.0}) {
        CHECK(forms(lambda, GrainDistribution::pareto(1.0)).covered_volume_fraction() == 1.0);
        CHECK(forms(lambda, GrainDistribution::constant(0.4)).covered_volume_fraction() ==
              doctest::Approx(1.0 - std::exp(-lambda * 0.4)).epsilon(1e-15));
    }
}

TEST_CASE("expected vacant length on finite windows") {
    const auto cf = forms(1.0, GrainDistribution::pareto(1.0));
    CHECK(cf.expected_vacant_length(e) == doctest::Approx(1.0).epsilon(1e-8));
    const double quad = oracle::integrate([&](double t) { return cf.vacancy_probability(t); }, 0.0, e, {1.0});
    CHECK(std::abs(quad - 1.0) <= 1e-8);
    for (double T : {10.0, 1e3, 1e6}) {
        CHECK(cf.expected_vacant_length(T) ==
              doctest::Approx((1.0 - std::exp(-1.0)) + std::exp(-1.0) * std::log(T)).epsilon(1e-8));
    }
    const auto c = forms(1.0, GrainDistribution::constant(5.0));
    CHECK(c.expected_vacant_length(0.75) == doctest::Approx(1.0 - std::exp(-0.75)).epsilon(1e-9));
    CHECK_THROWS_AS(cf.expected_vacant_length(0.0), std::invalid_argument);
}

TEST_CASE("derivative of the expected vacant length is the vacancy probability") {
    const auto cf = forms(0.8, GrainDistribution::exponential(2.0));
    for (double t : {0.3, 1.0, 4.0, 20.0}) {
        const double h = 1e-3;
        const double fd = (cf.expected_vacant_length(t + h) - cf.expected_vacant_length(t - h)) / (2 * h);
        CHECK(fd == doctest::Approx(cf.vacancy_probability(t)).epsilon(1e-5));
    }
}

TEST_CASE("expected number of vacant components") {
    const auto half = forms(1.0, GrainDistribution::pareto(0.5));
    const double exact = (1.0 - std::exp(-1.0)) + 1.5 * std::exp(-1.0);
    CHECK(std::abs(half.expected_num_vacant() - exact) <= 1e-6);
    CHECK(std::abs(half.expected_vacant_length(std::numeric_limits<double>::infinity()) - exact) <= 1e-6);
    // Independent quadrature: substitute s = sqrt(t) on [1, ∞), truncated at s = 60.
    const double oracle_value =
        (1.0 - std::exp(-1.0)) + oracle::gauss([](double s) { return 2.0 * s * std::exp(1.0 - 2.0 * s); }, 1.0, 60.0);
    CHECK(std::abs(half.expected_num_vacant() - oracle_value) <= 1e-6);
    REQUIRE(half.nv_geometric_parameter());
    CHECK(*half.nv_geometric_parameter() == doctest::Approx(1.0 / exact).epsilon(1e-6));
    CHECK(*half.nv_geometric_parameter() == doctest::Approx(0.8447).epsilon(1e-4));

    CHECK(std::isinf(forms(1.0, GrainDistribution::pareto(1.0)).expected_num_vacant()));
    CHECK(std::isinf(forms(1.0, GrainDistribution::exponential(1.0)).expected_num_vacant()));
    CHECK_FALSE(forms(1.0, GrainDistribution::pareto(1.0)).nv_geometric_parameter());
}

TEST_CASE("expected number of vacant components above the critical intensity") {
    // λ > 1, Pareto(1): ∫_0^1 e^{-λt} dt + e^{-λ}/(λ-1)
    for (double lambda : {1.5, 2.0, 4.0}) {
        const auto cf = forms(lambda, GrainDistribution::pareto(1.0));
        const double exact = lambda * ((1.0 - std::exp(-lambda)) / lambda + std::exp(-lambda) / (lambda - 1.0));
        CHECK(cf.expected_num_vacant() == doctest::Approx(exact).epsilon(1e-8));
    }
}

TEST_CASE("geometric law") {
    CHECK(geometric_pmf(1.0, 1) == 1.0);
    CHECK(geometric_pmf(1.0, 2) == 0.0);
    CHECK(geometric_pmf(0.25, 3) == doctest::Approx(0.25 * 0.75 * 0.75));
    double sum = 0.0;
    for (unsigned m = 1; m < 400; ++m) sum += geometric_pmf(0.1, m);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tabulated laws reproduce built-in closed forms") {
    std::vector<double> ys;
    for (int j = -40; j <= 160; ++j) ys.push_back(std::pow(10.0, j / 20.0));
    for (double alpha : {0.5, 0.8}) {
        const auto ref = forms(1.0, GrainDistribution::pareto(alpha));
        const auto tab = forms(1.0, GrainDistribution::tabulated(tabulate(GrainDistribution::pareto(alpha), ys)));
        CHECK(tab.expected_num_vacant() == doctest::Approx(ref.expected_num_vacant()).epsilon(1e-6));
    }
}

TEST_CASE("missed crossings") {
    const auto cf = forms(1.0, GrainDistribution::exponential(1.0));
    CHECK(cf.expected_missed_crossings(0.0) == doctest::Approx(1.0));
    CHECK(cf.expected_missed_crossings(std::log(1e4)) == doctest::Approx(1e-4).epsilon(1e-8));
    CHECK(std::isinf(forms(1.0, GrainDistribution::pareto(1.0)).expected_missed_crossings(1e6)));
}
