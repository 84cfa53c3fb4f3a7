#pragma once

#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "tabp/grain_distribution.hpp"
#include "tabp/rng.hpp"

namespace tabp {

enum class Domain { HalfLine, FullLine };

std::string to_string(Domain d);

struct ModelParams {
    double lambda = 1.0;
    GrainDistribution dist = GrainDistribution::constant(1.0);
    Domain domain = Domain::HalfLine;

    /// Throws std::invalid_argument unless lambda is positive and finite.
    void validate() const;
};

struct Germ {
    double u;
    double rho;

    double reach() const { return u + rho; }
    friend bool operator==(const Germ&, const Germ&) = default;
};

/// Germ-grain pairs restricted to a window. Half-line germs lie in [0, T];
/// full-line germs lie in [-left_buffer, T].
struct Realization {
    double window = 0.0;
    Domain domain = Domain::HalfLine;
    double left_buffer = 0.0;
    std::vector<Germ> germs;

    friend bool operator==(const Realization&, const Realization&) = default;
};

/// Poisson germs from `start` onward, generated by cumulative exponential gaps,
/// each immediately followed by its mark. The draw order is fixed, so a longer
/// window reproduces a shorter one as a prefix.
class GermStream {
public:
    GermStream(const ModelParams& params, double start, RandomSource& rng)
        : params_{&params}, rng_{&rng}, position_{start} {}

    Germ next() {
        position_ += -std::log(rng_->uniform()) / params_->lambda;
        const double rho = params_->dist.sample(*rng_, clamped_);
        return {position_, rho};
    }

    /// Next germ position only; the mark is drawn by `mark()`. Lets callers
    /// stop at a window edge without consuming a mark.
    double advance() {
        position_ += -std::log(rng_->uniform()) / params_->lambda;
        return position_;
    }
    double mark() { return params_->dist.sample(*rng_, clamped_); }

    std::uint64_t clamped() const { return clamped_; }

private:
    const ModelParams* params_;
    RandomSource* rng_;
    double position_;
    std::uint64_t clamped_ = 0;
};

/// Default expected number of missed crossings from beyond the left buffer.
inline constexpr double kDefaultBufferEpsilon = 1e-4;

/// Smallest L (to bisection precision) with lambda * E(rho - L)_+ <= epsilon.
/// Bounded grains give L = sup of the support. Throws std::domain_error for
/// infinite-mean grains.
double left_buffer(const ModelParams& params, double epsilon = kDefaultBufferEpsilon);

/// Germs on [0, T]. Requires params.domain == HalfLine.
Realization sample_halfline(const ModelParams& params, double window, RandomSource& rng);

/// Germs on [-L, T] with L = left_buffer(params, epsilon). Requires
/// params.domain == FullLine and a finite mean.
Realization sample_fullline(const ModelParams& params, double window, RandomSource& rng,
                            double epsilon = kDefaultBufferEpsilon);

/// CSV with header `u,rho`, one germ per line.
void write_realization_csv(std::ostream& out, const Realization& real);
std::vector<Germ> read_germs_csv(std::istream& in);

}  // namespace tabp
