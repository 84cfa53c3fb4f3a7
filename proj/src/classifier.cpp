#include "tabp/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tabp/analytics.hpp"

namespace tabp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double vacancy_integrand(const ModelParams& p, double t) {
    return std::exp(-p.lambda * p.dist.truncated_mean(t));
}

/// Integral value from a certificate, filling the verdict diagnostics.
void fill_certified_integral(const ModelParams& params, const TailCertificate& cert, RegimeVerdict& v) {
    const auto kinks = params.dist.kinks();
    const ImproperIntegral r = integrate_to_infinity([&](double t) { return vacancy_integrand(params, t); }, cert,
                                                     QuadratureTolerance{}, kinks);
    v.integral = VacancyIntegral::finite(r.value);
    v.truncation_point = r.cutoff;
    v.tail_certificate = std::string(to_string(cert.kind));
}

RegimeVerdict finite_mean_verdict(MeanValue mean, ClassificationMethod method) {
    RegimeVerdict v;
    v.regime = Regime::I;
    v.mean_rho = mean;
    // The integrand tends to exp(-lambda E rho) > 0.
    v.integral = VacancyIntegral::infinite();
    v.method = method;
    v.integrand_exponent = 0.0;
    return v;
}

RegimeVerdict classify_analytic(const ModelParams& params) {
    const auto& dist = params.dist;
    const MeanValue mean = dist.mean();
    if (mean.is_finite()) return finite_mean_verdict(mean, ClassificationMethod::Analytic);

    // Only Pareto with alpha <= 1 reaches here.
    const double alpha = dist.pareto_alpha();
    RegimeVerdict v;
    v.mean_rho = mean;
    v.method = ClassificationMethod::Analytic;
    if (alpha < 1.0) {
        // lambda E(t∧ρ) grows like t^{1-α}: the integrand decays faster than any power.
        v.regime = Regime::II;
        v.integrand_exponent = kInf;
        fill_certified_integral(params, *vacancy_tail_certificate(params), v);
        return v;
    }
    // alpha == 1: for t >= 1, E(t∧ρ) = 1 + ln t, so the integrand is
    // e^{-λ} t^{-λ}. This extends the λ = 1 divergence computation to any λ:
    // the integral is finite iff λ > 1.
    v.integrand_exponent = params.lambda;
    if (params.lambda > 1.0) {
        v.regime = Regime::II;
        fill_certified_integral(params, *vacancy_tail_certificate(params), v);
    } else {
        v.regime = Regime::III;
        v.integral = VacancyIntegral::infinite();
        v.truncation_point = kInf;
    }
    return v;
}

RegimeVerdict classify_tail_asymptotic(const ModelParams& params, const ClassifierOptions& opt) {
    const MeanValue mean = params.dist.mean();
    if (mean.is_finite()) return finite_mean_verdict(mean, ClassificationMethod::TailAsymptotic);

    RegimeVerdict v;
    v.mean_rho = mean;
    v.method = ClassificationMethod::TailAsymptotic;
    v.truncation_point = opt.horizon;

    // Local log-slope of g(t) = lambda E(t∧ρ) against ln t over the last
    // decade below the horizon. The integrand behaves like t^{-slope}.
    const int n = std::max(opt.points_per_decade, 2);
    const double log_step = std::log(10.0) / n;
    const double t0 = opt.horizon / 10.0;
    std::vector<double> g(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double t = i == n ? opt.horizon : t0 * std::exp(log_step * i);
        g[i] = params.lambda * params.dist.truncated_mean(t);
    }
    double min_slope = kInf;
    double max_slope = -kInf;
    for (int i = 0; i < n; ++i) {
        const double s = (g[i + 1] - g[i]) / log_step;
        min_slope = std::min(min_slope, s);
        max_slope = std::max(max_slope, s);
    }
    v.integrand_exponent = (g[n] - g[0]) / std::log(10.0);

    if (min_slope > 1.0 + opt.delta) {
        // g - (1+δ) ln t strictly increasing over the decade: integrable tail.
        v.regime = Regime::II;
        if (const auto cert = vacancy_tail_certificate(params)) {
            fill_certified_integral(params, *cert, v);
        } else {
            const auto kinks = params.dist.kinks();
            const double head = integrate_piecewise([&](double t) { return vacancy_integrand(params, t); }, 0.0,
                                                    opt.horizon, QuadratureTolerance{}, kinks);
            // Continue the observed t^{-min_slope} decay past the horizon.
            const double tail = std::exp(-g[n]) * opt.horizon / (min_slope - 1.0);
            v.integral = VacancyIntegral::finite(head + tail);
            v.method = ClassificationMethod::Heuristic;
            v.tail_certificate = "extrapolated power-law";
        }
        return v;
    }
    if (max_slope <= 1.0 - opt.delta) {
        // g - (1-δ) ln t non-increasing: integrand decays no faster than t^{-(1-δ)}.
        v.regime = Regime::III;
        v.integral = VacancyIntegral::infinite();
        return v;
    }
    v.regime = Regime::Inconclusive;
    v.integral = VacancyIntegral::undetermined();
    return v;
}

TabulatedTail fine_tabulation(const GrainDistribution& dist) {
    std::vector<double> ys = dist.kinks();
    for (int j = -120; j <= 160; ++j) ys.push_back(std::pow(10.0, j / 40.0));
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    return tabulate(dist, ys);
}

}  // namespace

RegimeVerdict classify(const ModelParams& params, const ClassifierOptions& options) {
    params.validate();
    if (params.dist.kind() == GrainDistribution::Kind::Tabulated) return classify_tail_asymptotic(params, options);
    if (options.force_tail_asymptotic) {
        ModelParams tabulated = params;
        tabulated.dist = GrainDistribution::tabulated(fine_tabulation(params.dist));
        return classify_tail_asymptotic(tabulated, options);
    }
    return classify_analytic(params);
}

UnboundedComponent unbounded_component_exists(const RegimeVerdict& verdict) {
    switch (verdict.regime) {
        case Regime::II: return UnboundedComponent::Yes;
        case Regime::I:
        case Regime::III: return UnboundedComponent::No;
        case Regime::Inconclusive: return UnboundedComponent::Unknown;
    }
    return UnboundedComponent::Unknown;
}

std::string to_string(Regime r) {
    switch (r) {
        case Regime::I: return "I";
        case Regime::II: return "II";
        case Regime::III: return "III";
        case Regime::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

std::string to_string(ClassificationMethod m) {
    switch (m) {
        case ClassificationMethod::Analytic: return "analytic";
        case ClassificationMethod::TailAsymptotic: return "tail-asymptotic";
        case ClassificationMethod::Heuristic: return "heuristic";
    }
    return "heuristic";
}

std::string to_string(UnboundedComponent u) {
    switch (u) {
        case UnboundedComponent::Yes: return "yes";
        case UnboundedComponent::No: return "no";
        case UnboundedComponent::Unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace tabp
