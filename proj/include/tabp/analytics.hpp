#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tabp/point_process.hpp"
#include "tabp/quadrature.hpp"

namespace tabp {

/// Closed-form side of the model: every expectation the simulation is
/// compared against, evaluated by formula plus quadrature.
class ClosedForms {
public:
    explicit ClosedForms(ModelParams params, QuadratureTolerance tol = {});

    const ModelParams& params() const { return params_; }

    /// P(t not covered) on the half-line: exp(-lambda * E(t ∧ rho)).
    double vacancy_probability(double t) const;

    /// Long-run covered fraction: 1 - exp(-lambda * E rho), or 1 if E rho = ∞.
    double covered_volume_fraction() const;

    /// Expected vacant length of [0, T]: ∫_0^T exp(-lambda E(t ∧ rho)) dt.
    /// T = +∞ integrates to infinity with an analytic tail certificate and
    /// returns +∞ when the integral diverges.
    double expected_vacant_length(double window) const;

    /// E N_v = lambda * expected_vacant_length(∞).
    double expected_num_vacant() const;

    /// p = P(tau_2 = ∞) = 1 / E N_v; nullopt when E N_v = ∞ (p = 0).
    std::optional<double> nv_geometric_parameter() const;

    /// Expected number of grains from germs left of -L reaching 0.
    double expected_missed_crossings(double left_buffer) const;

private:
    ModelParams params_;
    QuadratureTolerance tol_;
};

/// Geometric law on {1, 2, ...}: P(N = m) = p (1 - p)^{m-1}.
double geometric_pmf(double p, unsigned m);

/// Builds a tail certificate for ∫ exp(-lambda E(t ∧ rho)) dt when the
/// integral converges, from the distribution family. nullopt when no
/// certificate is known (the caller falls back to the heuristic path).
std::optional<TailCertificate> vacancy_tail_certificate(const ModelParams& params);

}  // namespace tabp
