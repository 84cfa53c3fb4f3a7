#pragma once

#include <functional>
#include <span>
#include <string_view>

namespace tabp {

struct QuadratureTolerance {
    double abs = 1e-9;
    double rel = 1e-7;
};

using Integrand = std::function<double(double)>;

/// Adaptive Simpson on [a, b]. Recursion stops when the Richardson error
/// estimate drops below max(abs, rel * |estimate|) for the subinterval's share.
double adaptive_simpson(const Integrand& f, double a, double b, QuadratureTolerance tol = {});

/// Adaptive Simpson applied separately on each piece of [a, b] cut at the
/// powers of two inside it plus any caller-supplied breakpoints (kinks of f).
/// Keeps integrands spanning many orders of magnitude well resolved.
double integrate_piecewise(const Integrand& f, double a, double b, QuadratureTolerance tol = {},
                           std::span<const double> breakpoints = {});

/// Analytic control of ∫_t^∞ f for t >= start.
struct TailCertificate {
    enum class Kind { PowerLaw, Exponential };

    Kind kind = Kind::Exponential;
    double start = 0.0;
    /// Upper bound on (or, when `exact`, the value of) ∫_t^∞ f(s) ds, t >= start.
    std::function<double(double)> tail_integral;
    bool exact = false;
};

std::string_view to_string(TailCertificate::Kind kind);

struct ImproperIntegral {
    double value = 0.0;
    /// Upper limit of the numerical part.
    double cutoff = 0.0;
    /// Remaining error bound from the tail (zero when the tail was added exactly).
    double tail_bound = 0.0;
};

/// ∫_0^∞ f: numerical quadrature on [0, cutoff] plus the certified tail. For
/// exact certificates the tail value is added; otherwise the cutoff is pushed
/// out until the bound falls below tol.abs. Throws std::runtime_error if no
/// such cutoff exists below 1e300.
ImproperIntegral integrate_to_infinity(const Integrand& f, const TailCertificate& tail,
                                       QuadratureTolerance tol = {},
                                       std::span<const double> breakpoints = {});

}  // namespace tabp
