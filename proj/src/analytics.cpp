#include "tabp/analytics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "tabp/classifier.hpp"

namespace tabp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

/// Certificate for integrands exp(-lambda (A + B t^gamma)), t >= t0, with
/// 0 < gamma <= 1. Substituting s = t^gamma turns the tail into
/// e^{-lambda A}/gamma ∫_S^∞ s^k e^{-c s} ds with k = 1/gamma - 1, c = lambda B,
/// and for S > k/c the log-integrand decays at least at rate c - k/S.
TailCertificate stretched_exponential_certificate(double lambda, double A, double B, double gamma, double t0) {
    const double k = 1.0 / gamma - 1.0;
    const double c = lambda * B;
    const double start = std::max(t0, std::pow(2.0 * k / c + 1e-300, 1.0 / gamma));
    TailCertificate cert;
    cert.kind = TailCertificate::Kind::Exponential;
    cert.start = start;
    cert.tail_integral = [=](double t) {
        const double S = std::pow(t, gamma);
        const double rate = c - k / S;
        const double log_bound = -lambda * A - std::log(gamma) + k * std::log(S) - c * S - std::log(rate);
        return std::exp(log_bound);
    };
    return cert;
}

/// exp(-lambda (A + B ln t)) = e^{-lambda A} t^{-lambda B} for t >= t0; exact tail.
TailCertificate power_law_certificate(double lambda, double A, double B, double t0) {
    TailCertificate cert;
    cert.kind = TailCertificate::Kind::PowerLaw;
    cert.start = t0;
    cert.exact = true;
    const double exponent = lambda * B;
    cert.tail_integral = [=](double t) {
        return std::exp(-lambda * A + (1.0 - exponent) * std::log(t)) / (exponent - 1.0);
    };
    return cert;
}

}  // namespace

std::optional<TailCertificate> vacancy_tail_certificate(const ModelParams& params) {
    const auto& dist = params.dist;
    const double lambda = params.lambda;
    switch (dist.kind()) {
        case GrainDistribution::Kind::Pareto: {
            const double alpha = dist.pareto_alpha();
            if (alpha < 1.0) {
                // E(t∧ρ) = (t^{1-α} - α)/(1-α) for t >= 1
                return stretched_exponential_certificate(lambda, -alpha / (1.0 - alpha), 1.0 / (1.0 - alpha),
                                                         1.0 - alpha, 1.0);
            }
            if (alpha == 1.0 && lambda > 1.0) return power_law_certificate(lambda, 1.0, 1.0, 1.0);
            return std::nullopt;
        }
        case GrainDistribution::Kind::Tabulated: {
            const auto& table = dist.table();
            const auto beta = table.tail_exponent();
            if (!beta || *beta > 1.0 + 1e-9) return std::nullopt;
            const auto last = table.points().back();
            const double base = dist.truncated_mean(last.y);
            // Beyond the grid the tail is s_n (y/y_n)^{-β}.
            if (std::abs(*beta - 1.0) <= 1e-9) {
                const double B = last.tail * last.y;
                if (lambda * B <= 1.0) return std::nullopt;
                return power_law_certificate(lambda, base - B * std::log(last.y), B, last.y);
            }
            const double gamma = 1.0 - *beta;
            const double B = last.tail * std::pow(last.y, *beta) / gamma;
            const double A = base - last.tail * last.y / gamma;
            return stretched_exponential_certificate(lambda, A, B, gamma, last.y);
        }
        default: return std::nullopt;
    }
}

ClosedForms::ClosedForms(ModelParams params, QuadratureTolerance tol) : params_{std::move(params)}, tol_{tol} {
    params_.validate();
}

double ClosedForms::vacancy_probability(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("vacancy_probability: t must be >= 0");
    return std::exp(-params_.lambda * params_.dist.truncated_mean(t));
}

double ClosedForms::covered_volume_fraction() const {
    const MeanValue m = params_.dist.mean();
    if (!m.is_finite()) return 1.0;
    return -std::expm1(-params_.lambda * m.value());
}

double ClosedForms::expected_vacant_length(double window) const {
    if (!(window > 0.0)) throw std::invalid_argument("expected_vacant_length: T must be positive");
    if (std::isinf(window)) {
        const RegimeVerdict v = classify(params_);
        switch (v.integral.status) {
            case VacancyIntegral::Status::Finite: return v.integral.value;
            case VacancyIntegral::Status::Infinite: return kInf;
            case VacancyIntegral::Status::Undetermined: return std::numeric_limits<double>::quiet_NaN();
        }
    }
    const auto kinks = params_.dist.kinks();
    return integrate_piecewise([this](double t) { return vacancy_probability(t); }, 0.0, window, tol_, kinks);
}

double ClosedForms::expected_num_vacant() const {
    return params_.lambda * expected_vacant_length(kInf);
}

std::optional<double> ClosedForms::nv_geometric_parameter() const {
    const double env = expected_num_vacant();
    if (!std::isfinite(env)) return std::nullopt;
    return 1.0 / env;
}

double ClosedForms::expected_missed_crossings(double left_buffer) const {
    const MeanValue m = params_.dist.mean();
    if (!m.is_finite()) return kInf;
    return params_.lambda * std::max(0.0, m.value() - params_.dist.truncated_mean(left_buffer));
}

double geometric_pmf(double p, unsigned m) {
    if (m == 0) return 0.0;
    return p * std::pow(1.0 - p, static_cast<double>(m - 1));
}

}  // namespace tabp
