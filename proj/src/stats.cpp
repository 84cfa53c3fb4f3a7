#include "tabp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace tabp::stats {

MeanEstimate mean_and_se(std::span<const double> xs) {
    MeanEstimate out;
    out.n = xs.size();
    if (xs.empty()) {
        out.mean = std::numeric_limits<double>::quiet_NaN();
        out.se = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    double mean = 0.0;
    double m2 = 0.0;
    std::size_t k = 0;
    for (double x : xs) {
        ++k;
        const double d = x - mean;
        mean += d / static_cast<double>(k);
        m2 += d * (x - mean);
    }
    out.mean = mean;
    out.se = out.n < 2 ? std::numeric_limits<double>::quiet_NaN()
                       : std::sqrt(m2 / static_cast<double>(out.n - 1) / static_cast<double>(out.n));
    return out;
}

MeanEstimate proportion(std::size_t hits, std::size_t n) {
    MeanEstimate out;
    out.n = n;
    if (n == 0) {
        out.mean = out.se = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    out.mean = p;
    out.se = n < 2 ? std::numeric_limits<double>::quiet_NaN() : std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return out;
}

double kolmogorov_survival(double x) {
    if (x <= 0.0) return 1.0;
    if (x < 0.2) return 1.0;  // Q(0.2) = 1 - 5e-13
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 200; ++k) {
        const double term = std::exp(-2.0 * k * k * x * x);
        sum += sign * term;
        if (term < 1e-17) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

TestResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_test: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
    }
    const double sqrt_n = std::sqrt(n);
    TestResult out;
    out.statistic = d;
    out.n = sample.size();
    out.p_value = kolmogorov_survival((sqrt_n + 0.12 + 0.11 / sqrt_n) * d);
    return out;
}

TestResult chi_square_test(std::span<const double> observed, std::span<const double> expected,
                           std::size_t fitted_parameters) {
    if (observed.size() != expected.size() || observed.size() < 2) {
        throw std::invalid_argument("chi_square_test: need matching bins, at least two");
    }
    if (observed.size() <= 1 + fitted_parameters) throw std::invalid_argument("chi_square_test: no degrees of freedom");
    TestResult out;
    double total = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) throw std::invalid_argument("chi_square_test: expected counts must be positive");
        const double diff = observed[i] - expected[i];
        out.statistic += diff * diff / expected[i];
        total += observed[i];
    }
    out.n = static_cast<std::size_t>(total);
    out.dof = observed.size() - 1 - fitted_parameters;
    out.p_value = boost::math::gamma_q(0.5 * static_cast<double>(out.dof), 0.5 * out.statistic);
    return out;
}

}  // namespace tabp::stats
