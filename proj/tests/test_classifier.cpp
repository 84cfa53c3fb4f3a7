#include <doctest.h>

#include <cmath>

#include "tabp/classifier.hpp"

using namespace tabp;

namespace {

ModelParams model(double lambda, GrainDistribution d) {
    ModelParams p;
    p.lambda = lambda;
    p.dist = std::move(d);
    return p;
}

}  // namespace

TEST_CASE("built-in truth table") {
    CHECK(classify(model(1.0, GrainDistribution::pareto(1.0))).regime == Regime::III);
    CHECK(classify(model(1.0, GrainDistribution::constant(1.0))).regime == Regime::I);
    CHECK(classify(model(1.0, GrainDistribution::exponential(1.0))).regime == Regime::I);
    CHECK(classify(model(1.0, GrainDistribution::pareto(2.0))).regime == Regime::I);
    CHECK(classify(model(1.0, GrainDistribution::pareto(0.5))).regime == Regime::II);
    CHECK(classify(model(0.5, GrainDistribution::pareto(1.0))).regime == Regime::III);
    CHECK(classify(model(1.5, GrainDistribution::pareto(1.0))).regime == Regime::II);
}

TEST_CASE("verdict details") {
    const auto v = classify(model(1.0, GrainDistribution::pareto(0.5)));
    CHECK(v.method == ClassificationMethod::Analytic);
    CHECK_FALSE(v.mean_rho.is_finite());
    REQUIRE(v.integral.is_finite());
    CHECK(std::abs(v.integral.value - ((1.0 - std::exp(-1.0)) + 1.5 * std::exp(-1.0))) <= 1e-6);
    CHECK(v.tail_certificate == "exponential");
    CHECK(std::isinf(v.integrand_exponent));

    const auto iii = classify(model(1.0, GrainDistribution::pareto(1.0)));
    CHECK(iii.integral.status == VacancyIntegral::Status::Infinite);
    CHECK(iii.integrand_exponent == 1.0);

    const auto i = classify(model(2.0, GrainDistribution::constant(3.0)));
    CHECK(i.mean_rho == MeanValue::finite(3.0));
    CHECK(i.integral.status == VacancyIntegral::Status::Infinite);
}

TEST_CASE("unbounded occupied component") {
    CHECK(unbounded_component_exists(classify(model(1.0, GrainDistribution::pareto(0.5)))) ==
          UnboundedComponent::Yes);
    CHECK(unbounded_component_exists(classify(model(1.0, GrainDistribution::pareto(1.0)))) ==
          UnboundedComponent::No);
    CHECK(unbounded_component_exists(classify(model(1.0, GrainDistribution::exponential(1.0)))) ==
          UnboundedComponent::No);
    RegimeVerdict unknown;
    unknown.regime = Regime::Inconclusive;
    CHECK(unbounded_component_exists(unknown) == UnboundedComponent::Unknown);
}

TEST_CASE("raising the intensity never moves II back to III") {
    for (double alpha : {0.3, 0.7, 1.0, 1.5}) {
        bool reached_ii = false;
        for (double lambda = 0.1; lambda < 5.0; lambda += 0.1) {
            const Regime r = classify(model(lambda, GrainDistribution::pareto(alpha))).regime;
            if (r == Regime::II) reached_ii = true;
            if (reached_ii) CHECK(r == Regime::II);
        }
    }
}

TEST_CASE("tail-asymptotic path agrees with the analytic one away from the boundary") {
    ClassifierOptions forced;
    forced.force_tail_asymptotic = true;
    struct Case {
        double lambda;
        double alpha;
    };
    for (const auto c : {Case{1.0, 0.5}, Case{1.0, 0.3}, Case{2.0, 1.0}, Case{0.5, 1.0}, Case{1.0, 2.0},
                         Case{0.8, 1.0}, Case{1.0, 1.0}}) {
        CAPTURE(c.lambda);
        CAPTURE(c.alpha);
        const auto params = model(c.lambda, GrainDistribution::pareto(c.alpha));
        const auto analytic = classify(params);
        const auto tail = classify(params, forced);
        CHECK(tail.method != ClassificationMethod::Analytic);
        CHECK((tail.regime == analytic.regime || tail.regime == Regime::Inconclusive));
        if (std::abs(c.lambda - 1.0) > 0.1 || c.alpha != 1.0) CHECK(tail.regime == analytic.regime);
        if (analytic.integral.is_finite() && tail.integral.is_finite()) {
            CHECK(tail.integral.value == doctest::Approx(analytic.integral.value).epsilon(1e-5));
        }
    }
}

TEST_CASE("critical tabulated law is inconclusive") {
    std::vector<double> ys;
    for (int j = 0; j <= 60; ++j) ys.push_back(std::pow(10.0, j / 10.0));
    const auto params = model(1.0, GrainDistribution::tabulated(tabulate(GrainDistribution::pareto(1.0), ys)));
    CHECK(classify(params).regime == Regime::Inconclusive);
    CHECK(classify(params).integral.status == VacancyIntegral::Status::Undetermined);
}

TEST_CASE("tabulated law with a finite mean") {
    const TabulatedTail t({{0.0, 1.0}, {1.0, 0.5}, {2.0, 0.0}});
    const auto v = classify(model(1.0, GrainDistribution::tabulated(t)));
    CHECK(v.regime == Regime::I);
    CHECK(v.method == ClassificationMethod::TailAsymptotic);
}

TEST_CASE("names") {
    CHECK(to_string(Regime::I) == "I");
    CHECK(to_string(Regime::II) == "II");
    CHECK(to_string(Regime::III) == "III");
    CHECK(to_string(Regime::Inconclusive) == "Inconclusive");
    CHECK(to_string(UnboundedComponent::Yes) == "yes");
}
