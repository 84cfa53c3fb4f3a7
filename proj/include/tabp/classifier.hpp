#pragma once

#include <optional>
#include <string>

#include "tabp/grain_distribution.hpp"
#include "tabp/point_process.hpp"

namespace tabp {

enum class Regime { I, II, III, Inconclusive };
enum class ClassificationMethod { Analytic, TailAsymptotic, Heuristic };
enum class UnboundedComponent { Yes, No, Unknown };

/// Status of ∫_0^∞ exp(-lambda E(t ∧ rho)) dt.
struct VacancyIntegral {
    enum class Status { Finite, Infinite, Undetermined };

    Status status = Status::Undetermined;
    double value = 0.0;  // meaningful when Finite

    static VacancyIntegral finite(double v) { return {Status::Finite, v}; }
    static VacancyIntegral infinite() { return {Status::Infinite, 0.0}; }
    static VacancyIntegral undetermined() { return {Status::Undetermined, 0.0}; }

    bool is_finite() const { return status == Status::Finite; }
};

struct RegimeVerdict {
    Regime regime = Regime::Inconclusive;
    MeanValue mean_rho = MeanValue::infinite();
    VacancyIntegral integral;
    ClassificationMethod method = ClassificationMethod::Analytic;

    /// Local decay exponent s of the integrand, exp(-lambda E(t ∧ rho)) ~ t^{-s},
    /// over the last decade examined (+∞ for faster than any power, 0 when the
    /// integrand tends to a positive constant).
    double integrand_exponent = 0.0;
    /// Upper limit of the numerical part of the integral (or the heuristic horizon).
    double truncation_point = 0.0;
    /// Tail certificate used for the integral value, if any.
    std::string tail_certificate;
};

struct ClassifierOptions {
    /// Margin around the critical t^{-1} decay for the tail-asymptotic path.
    double delta = 0.05;
    /// Largest t examined by the tail-asymptotic path.
    double horizon = 1e12;
    /// Evaluation points per decade.
    int points_per_decade = 10;
    /// Route built-in families through the tail-asymptotic path too.
    bool force_tail_asymptotic = false;
};

/// Decides the regime of (lambda, mu). Built-in families are classified
/// analytically; tabulated tails by tail asymptotics, which may answer
/// Inconclusive near the critical decay.
RegimeVerdict classify(const ModelParams& params, const ClassifierOptions& options = {});

UnboundedComponent unbounded_component_exists(const RegimeVerdict& verdict);

std::string to_string(Regime r);
std::string to_string(ClassificationMethod m);
std::string to_string(UnboundedComponent u);

}  // namespace tabp
