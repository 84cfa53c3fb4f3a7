#include "tabp/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tabp {

namespace {

constexpr int kMaxDepth = 48;

double simpson_step(const Integrand& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double eps, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * eps || !(m > a && b > m)) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * eps, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * eps, depth - 1);
}

}  // namespace

double adaptive_simpson(const Integrand& f, double a, double b, QuadratureTolerance tol) {
    if (!(b > a)) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // A coarse 1/3-rule estimate fixes the relative target; a few forced
    // levels guard against integrands that happen to vanish at the 3 nodes.
    const double scale = std::abs(whole);
    const double eps = std::max(tol.abs, tol.rel * scale);

    const int forced = 3;
    std::vector<double> edges(1 + (1 << forced));
    for (std::size_t i = 0; i < edges.size(); ++i) {
        edges[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(edges.size() - 1);
    }
    edges.back() = b;
    double total = 0.0;
    const double piece_eps = eps / static_cast<double>(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i];
        const double hi = edges[i + 1];
        const double flo = f(lo);
        const double fhi = f(hi);
        const double mid = 0.5 * (lo + hi);
        const double fmid = f(mid);
        const double w = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
        total += simpson_step(f, lo, flo, hi, fhi, mid, fmid, w, piece_eps, kMaxDepth);
    }
    return total;
}

double integrate_piecewise(const Integrand& f, double a, double b, QuadratureTolerance tol,
                           std::span<const double> breakpoints) {
    if (!(b > a)) return 0.0;
    std::vector<double> cuts{a, b};
    for (double bp : breakpoints) {
        if (bp > a && bp < b) cuts.push_back(bp);
    }
    // Dyadic cuts in both directions from 1.
    for (double p = 1.0; p < b; p *= 2.0) {
        if (p > a) cuts.push_back(p);
    }
    for (double p = 0.5; p > a && p > 1e-6; p *= 0.5) {
        if (p < b) cuts.push_back(p);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += adaptive_simpson(f, cuts[i], cuts[i + 1], tol);
    }
    return total;
}

std::string_view to_string(TailCertificate::Kind kind) {
    switch (kind) {
        case TailCertificate::Kind::PowerLaw: return "power-law";
        case TailCertificate::Kind::Exponential: return "exponential";
    }
    return "unknown";
}

ImproperIntegral integrate_to_infinity(const Integrand& f, const TailCertificate& tail,
                                       QuadratureTolerance tol, std::span<const double> breakpoints) {
    if (!tail.tail_integral) throw std::invalid_argument("tail certificate has no bound");
    ImproperIntegral out;
    double cutoff = std::max(tail.start, 1.0);
    if (tail.exact) {
        out.cutoff = cutoff;
        out.value = integrate_piecewise(f, 0.0, cutoff, tol, breakpoints) + tail.tail_integral(cutoff);
        out.tail_bound = 0.0;
        return out;
    }
    double bound = tail.tail_integral(cutoff);
    while (!(bound <= tol.abs)) {
        cutoff *= 2.0;
        if (cutoff > 1e300) throw std::runtime_error("tail certificate never falls below tolerance");
        bound = tail.tail_integral(cutoff);
    }
    out.cutoff = cutoff;
    out.value = integrate_piecewise(f, 0.0, cutoff, tol, breakpoints);
    out.tail_bound = bound;
    return out;
}

}  // namespace tabp
