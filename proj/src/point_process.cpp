#include "tabp/point_process.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace tabp {

std::string to_string(Domain d) {
    return d == Domain::HalfLine ? "half-line" : "full-line";
}

void ModelParams::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("lambda must be a positive finite number, got " + format_double(lambda));
    }
}

double left_buffer(const ModelParams& params, double epsilon) {
    params.validate();
    if (!(epsilon > 0.0)) throw std::invalid_argument("left-buffer epsilon must be positive");
    const MeanValue mean = params.dist.mean();
    if (!mean.is_finite()) {
        throw std::domain_error(
            "full-line window not simulable: infinite-mean grains cover the entire line a.s.");
    }
    if (const auto top = params.dist.support_max()) return *top;

    // Expected number of germs left of -L whose grain reaches 0:
    // lambda * E(rho - L)_+ = lambda * (E rho - E(L ∧ rho)).
    const double m = mean.value();
    auto missed = [&](double L) { return params.lambda * (m - params.dist.truncated_mean(L)); };

    double lo = 0.0;
    double hi = 1.0;
    while (missed(hi) > epsilon) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("left buffer does not converge");
    }
    for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (missed(mid) > epsilon ? lo : hi) = mid;
    }
    return hi;
}

namespace {

Realization sample_from(const ModelParams& params, double start, double window, RandomSource& rng) {
    Realization real;
    real.window = window;
    real.domain = params.domain;
    real.left_buffer = -start;
    GermStream stream(params, start, rng);
    for (double u = stream.advance(); u <= window; u = stream.advance()) {
        real.germs.push_back({u, stream.mark()});
    }
    return real;
}

void require_window(double window) {
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw std::invalid_argument("window length T must be positive and finite");
    }
}

}  // namespace

Realization sample_halfline(const ModelParams& params, double window, RandomSource& rng) {
    params.validate();
    require_window(window);
    if (params.domain != Domain::HalfLine) throw std::invalid_argument("sample_halfline needs a half-line model");
    return sample_from(params, 0.0, window, rng);
}

Realization sample_fullline(const ModelParams& params, double window, RandomSource& rng, double epsilon) {
    params.validate();
    require_window(window);
    if (params.domain != Domain::FullLine) throw std::invalid_argument("sample_fullline needs a full-line model");
    const double L = left_buffer(params, epsilon);
    Realization real = sample_from(params, -L, window, rng);
    real.left_buffer = L;
    return real;
}

void write_realization_csv(std::ostream& out, const Realization& real) {
    out << "u,rho\n";
    for (const auto& g : real.germs) out << format_double(g.u) << ',' << format_double(g.rho) << '\n';
}

std::vector<Germ> read_germs_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("germ CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "u,rho") throw std::invalid_argument("germ CSV must start with header 'u,rho'");
    std::vector<Germ> germs;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("malformed germ row '" + line + "'");
        try {
            germs.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
        } catch (const std::logic_error&) {
            throw std::invalid_argument("malformed germ row '" + line + "'");
        }
    }
    return germs;
}

}  // namespace tabp
