#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tabp/rng.hpp"

namespace tabp {

/// Eρ: either a positive finite number or +∞.
class MeanValue {
public:
    static MeanValue finite(double value);
    static MeanValue infinite() { return MeanValue{}; }

    bool is_finite() const { return value_.has_value(); }
    /// Throws std::logic_error when infinite.
    double value() const;
    /// +∞ when infinite.
    double as_double() const;

    friend bool operator==(const MeanValue&, const MeanValue&) = default;

private:
    MeanValue() = default;
    std::optional<double> value_;
};

struct TailPoint {
    double y;
    double tail;
};

/// Tail function P(ρ > y) given on a grid. Interior segments are interpolated
/// log-log linearly (exact for power laws) wherever both ends are positive and
/// linearly otherwise; beyond the grid the last two points fix a power law.
/// A leading (0, 1) node is added if the grid starts above zero.
class TabulatedTail {
public:
    explicit TabulatedTail(std::vector<TailPoint> points, std::string source = {});

    double tail(double y) const;
    double truncated_mean(double t) const;
    MeanValue mean() const;
    double inverse_tail(double u) const;

    /// Decay exponent of the extrapolated power law; nullopt when the last
    /// tabulated tail value is zero (bounded support).
    std::optional<double> tail_exponent() const { return exponent_; }
    std::span<const TailPoint> points() const { return points_; }
    const std::string& source() const { return source_; }
    std::vector<double> knots() const;

private:
    double segment_tail(std::size_t i, double y) const;
    double extrapolated_tail(double y) const;
    double beyond_grid_integral(double t) const;

    std::vector<TailPoint> points_;
    std::vector<double> cumulative_;       // ∫_0^{y_i} tail
    std::vector<double> chunk_cumulative_;  // ∫_{y_n}^{y_n 2^k} tail
    std::optional<double> exponent_;
    std::string source_;
};

/// Grain-length law μ on (0, ∞).
class GrainDistribution {
public:
    enum class Kind { Constant, Exponential, Pareto, Tabulated };

    static GrainDistribution constant(double c);
    static GrainDistribution exponential(double mean);
    /// Scale 1: P(ρ > y) = y^{-α} for y >= 1.
    static GrainDistribution pareto(double alpha);
    static GrainDistribution tabulated(TabulatedTail table);

    Kind kind() const;

    double sample(RandomSource& rng) const;
    /// Same draw; increments `clamped` when the draw overflowed and was
    /// replaced by the largest finite double.
    double sample(RandomSource& rng, std::uint64_t& clamped) const;
    /// Inverse-tail transform of a single uniform u ∈ (0,1).
    double sample_from_uniform(double u, bool* clamped = nullptr) const;

    double tail(double y) const;
    /// E(t ∧ ρ). Throws std::invalid_argument for t < 0.
    double truncated_mean(double t) const;
    MeanValue mean() const;

    /// sup of the support when it is bounded.
    std::optional<double> support_max() const;
    /// Non-smooth points of the tail, useful as quadrature breakpoints.
    std::vector<double> kinks() const;

    /// Parameter accessors; valid only for the matching kind.
    double constant_value() const;
    double exponential_mean() const;
    double pareto_alpha() const;
    const TabulatedTail& table() const;

    /// Textual form, e.g. "pareto:alpha=1". Re-parses to an equivalent law.
    std::string spec() const;

private:
    struct Constant { double c; };
    struct Exponential { double mean; };
    struct Pareto { double alpha; };

    using Variant = std::variant<Constant, Exponential, Pareto, TabulatedTail>;
    explicit GrainDistribution(Variant v) : law_{std::move(v)} {}

    Variant law_;
};

std::string to_string(GrainDistribution::Kind kind);

/// Shortest decimal string that round-trips to the same double.
std::string format_double(double x);

/// Parses `name(:key=value)*`: constant:c=2, exponential:mean=1,
/// pareto:alpha=1, table:path=<csv with header y,tail>. Throws
/// std::invalid_argument naming the offending token.
GrainDistribution parse_distribution(const std::string& spec);

/// Reads a `y,tail` CSV.
TabulatedTail load_tail_table(const std::string& path);

/// Samples `dist.tail` at the given abscissae (plus y = 0) into a table.
TabulatedTail tabulate(const GrainDistribution& dist, std::span<const double> ys);

}  // namespace tabp
