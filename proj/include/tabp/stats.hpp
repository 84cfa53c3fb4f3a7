#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tabp::stats {

/// Sample mean with standard error of the mean. The SE is NaN below two
/// observations.
struct MeanEstimate {
    double mean = 0.0;
    double se = 0.0;
    std::size_t n = 0;
};

MeanEstimate mean_and_se(std::span<const double> xs);

/// Proportion with binomial standard error sqrt(p(1-p)/n).
MeanEstimate proportion(std::size_t hits, std::size_t n);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    std::size_t n = 0;
    std::size_t dof = 0;  // chi-square only
};

/// Asymptotic Kolmogorov survival function Q(x) = 2 Σ (-1)^{k-1} exp(-2 k² x²).
double kolmogorov_survival(double x);

/// One-sample KS test against a continuous CDF. `sample` is copied and sorted.
/// The p-value uses the Stephens small-sample correction of the argument.
TestResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

/// Pearson chi-square goodness of fit; `expected` are counts, not
/// probabilities. dof = bins - 1 - fitted_parameters.
TestResult chi_square_test(std::span<const double> observed, std::span<const double> expected,
                           std::size_t fitted_parameters = 0);

}  // namespace tabp::stats
