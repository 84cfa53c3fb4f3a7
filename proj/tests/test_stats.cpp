#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "tabp/rng.hpp"
#include "tabp/stats.hpp"

using namespace tabp;

TEST_CASE("mean and standard error") {
    const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
    const auto m = stats::mean_and_se(xs);
    CHECK(m.mean == 2.5);
    CHECK(m.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)).epsilon(1e-15));
    CHECK(m.n == 4);
    const std::vector<double> one{7.0};
    CHECK(std::isnan(stats::mean_and_se(one).se));
    CHECK(stats::mean_and_se(one).mean == 7.0);
}

TEST_CASE("proportion") {
    const auto p = stats::proportion(25, 100);
    CHECK(p.mean == 0.25);
    CHECK(p.se == doctest::Approx(std::sqrt(0.25 * 0.75 / 100)));
    CHECK(std::isnan(stats::proportion(1, 1).se));
}

TEST_CASE("Kolmogorov distribution") {
    CHECK(stats::kolmogorov_survival(0.0) == 1.0);
    CHECK(stats::kolmogorov_survival(0.5) == doctest::Approx(0.963945).epsilon(1e-5));
    CHECK(stats::kolmogorov_survival(1.0) == doctest::Approx(0.269999671).epsilon(1e-7));
    CHECK(stats::kolmogorov_survival(1.358) == doctest::Approx(0.05).epsilon(1e-2));
    CHECK(stats::kolmogorov_survival(3.0) < 1e-7);
}

TEST_CASE("KS statistic") {
    auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
    CHECK(stats::ks_test({0.5}, uniform).statistic == 0.5);
    CHECK(stats::ks_test({0.1, 0.4, 0.7}, uniform).statistic == doctest::Approx(0.3));
    CHECK_THROWS_AS(stats::ks_test({}, uniform), std::invalid_argument);
}

TEST_CASE("KS accepts the true law and rejects a wrong one") {
    RandomSource rng(17);
    std::vector<double> xs(5000);
    for (auto& x : xs) x = -std::log(rng.uniform()) / 2.0;
    auto exp2 = [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-2.0 * x); };
    auto exp1 = [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); };
    CHECK(stats::ks_test(xs, exp2).p_value > 0.01);
    CHECK(stats::ks_test(xs, exp1).p_value < 1e-6);
}

TEST_CASE("chi-square") {
    const std::vector<double> obs{10.0, 20.0, 30.0};
    const std::vector<double> exp{20.0, 20.0, 20.0};
    const auto r = stats::chi_square_test(obs, exp);
    CHECK(r.statistic == doctest::Approx(10.0));
    CHECK(r.dof == 2);
    CHECK(r.n == 60);
    CHECK(r.p_value == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));

    const double d = 5.0 * 1.959963984540054;  // 50 +- 5 z_{0.975}
    const std::vector<double> o2{50.0 + d, 50.0 - d};
    const std::vector<double> e2{50.0, 50.0};
    // statistic 3.8414588 is the 0.95 quantile with one degree of freedom
    CHECK(stats::chi_square_test(o2, e2).p_value == doctest::Approx(0.05).epsilon(1e-6));

    CHECK_THROWS_AS(stats::chi_square_test(obs, std::vector<double>{1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(stats::chi_square_test(obs, std::vector<double>{1.0, 0.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(stats::chi_square_test(std::vector<double>{1, 2}, std::vector<double>{1, 2}, 1),
                    std::invalid_argument);
}
