#include "tabp/grain_distribution.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tabp/quadrature.hpp"

namespace tabp {

namespace {

// Tolerance of the ∫_0^t P(ρ>s) ds identity for tabulated tails.
constexpr QuadratureTolerance kTailQuadrature{1e-8, 1e-8};
// Precomputed extrapolation chunks reach y_n * 2^kChunks.
constexpr int kChunks = 64;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + " must be a positive finite number, got " +
                                    format_double(x));
    }
}

}  // namespace

MeanValue MeanValue::finite(double value) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw std::invalid_argument("finite mean must be positive");
    }
    MeanValue m;
    m.value_ = value;
    return m;
}

double MeanValue::value() const {
    if (!value_) throw std::logic_error("mean is infinite");
    return *value_;
}

double MeanValue::as_double() const {
    return value_ ? *value_ : std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// TabulatedTail

TabulatedTail::TabulatedTail(std::vector<TailPoint> points, std::string source)
    : points_{std::move(points)}, source_{std::move(source)} {
    if (points_.empty()) throw std::invalid_argument("tail table is empty");
    for (const auto& p : points_) {
        if (!std::isfinite(p.y) || p.y < 0.0) throw std::invalid_argument("tail table: y must be >= 0");
        if (!(p.tail >= 0.0 && p.tail <= 1.0)) throw std::invalid_argument("tail table: tail must lie in [0,1]");
    }
    for (std::size_t i = 1; i < points_.size(); ++i) {
        if (!(points_[i].y > points_[i - 1].y)) {
            throw std::invalid_argument("tail table: y values must be strictly increasing");
        }
        if (points_[i].tail > points_[i - 1].tail) {
            throw std::invalid_argument("tail table: tail values must be non-increasing");
        }
    }
    if (points_.front().y > 0.0) {
        points_.insert(points_.begin(), TailPoint{0.0, 1.0});
    } else if (points_.front().tail != 1.0) {
        throw std::invalid_argument("tail table: P(rho > 0) must be 1");
    }
    if (points_.size() < 2) throw std::invalid_argument("tail table needs at least two points");

    const auto& last = points_.back();
    const auto& prev = points_[points_.size() - 2];
    if (last.tail > 0.0) {
        if (!(prev.tail > last.tail) || prev.y <= 0.0) {
            throw std::invalid_argument(
                "tail table: last two points must be strictly decreasing with y > 0 to fit a power-law tail");
        }
        exponent_ = std::log(prev.tail / last.tail) / std::log(last.y / prev.y);
        // Rounding in a tabulated y^-1 tail must not flip the mean to finite.
        if (std::abs(*exponent_ - 1.0) <= 1e-9) exponent_ = 1.0;
    }

    cumulative_.assign(points_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        const double a = points_[i].y;
        const double b = points_[i + 1].y;
        cumulative_[i + 1] =
            cumulative_[i] + adaptive_simpson([&](double y) { return segment_tail(i, y); }, a, b, kTailQuadrature);
    }

    if (exponent_) {
        chunk_cumulative_.assign(kChunks + 1, 0.0);
        double lo = last.y;
        for (int k = 0; k < kChunks; ++k) {
            const double hi = 2.0 * lo;
            chunk_cumulative_[k + 1] =
                chunk_cumulative_[k] +
                adaptive_simpson([&](double y) { return extrapolated_tail(y); }, lo, hi, kTailQuadrature);
            lo = hi;
        }
    }
}

double TabulatedTail::segment_tail(std::size_t i, double y) const {
    const auto& a = points_[i];
    const auto& b = points_[i + 1];
    if (a.y > 0.0 && a.tail > 0.0 && b.tail > 0.0) {
        const double slope = std::log(b.tail / a.tail) / std::log(b.y / a.y);
        return a.tail * std::pow(y / a.y, slope);
    }
    const double w = (y - a.y) / (b.y - a.y);
    return a.tail + w * (b.tail - a.tail);
}

double TabulatedTail::extrapolated_tail(double y) const {
    const auto& last = points_.back();
    if (!exponent_) return 0.0;
    return last.tail * std::pow(y / last.y, -*exponent_);
}

double TabulatedTail::tail(double y) const {
    if (y <= 0.0) return 1.0;
    if (y >= points_.back().y) return y == points_.back().y ? points_.back().tail : extrapolated_tail(y);
    const auto it = std::upper_bound(points_.begin(), points_.end(), y,
                                     [](double v, const TailPoint& p) { return v < p.y; });
    const std::size_t i = static_cast<std::size_t>(it - points_.begin()) - 1;
    return segment_tail(i, y);
}

double TabulatedTail::beyond_grid_integral(double t) const {
    if (!exponent_) return 0.0;
    const double y_n = points_.back().y;
    if (t <= y_n) return 0.0;
    auto ext = [this](double y) { return extrapolated_tail(y); };
    const int k = static_cast<int>(std::floor(std::log2(t / y_n)));
    if (k < kChunks) {
        const double lo = std::ldexp(y_n, k);
        return chunk_cumulative_[k] + adaptive_simpson(ext, lo, t, kTailQuadrature);
    }
    double total = chunk_cumulative_[kChunks];
    double lo = std::ldexp(y_n, kChunks);
    while (2.0 * lo < t) {
        total += adaptive_simpson(ext, lo, 2.0 * lo, kTailQuadrature);
        lo *= 2.0;
    }
    return total + adaptive_simpson(ext, lo, t, kTailQuadrature);
}

double TabulatedTail::truncated_mean(double t) const {
    if (t <= 0.0) return 0.0;
    const double y_n = points_.back().y;
    if (t >= y_n) return cumulative_.back() + beyond_grid_integral(t);
    const auto it = std::upper_bound(points_.begin(), points_.end(), t,
                                     [](double v, const TailPoint& p) { return v < p.y; });
    const std::size_t i = static_cast<std::size_t>(it - points_.begin()) - 1;
    return cumulative_[i] +
           adaptive_simpson([&](double y) { return segment_tail(i, y); }, points_[i].y, t, kTailQuadrature);
}

MeanValue TabulatedTail::mean() const {
    if (!exponent_) return MeanValue::finite(cumulative_.back());
    if (*exponent_ <= 1.0) return MeanValue::infinite();
    const auto& last = points_.back();
    return MeanValue::finite(cumulative_.back() + last.tail * last.y / (*exponent_ - 1.0));
}

double TabulatedTail::inverse_tail(double u) const {
    // First node whose tail drops below u.
    const auto it = std::find_if(points_.begin(), points_.end(), [u](const TailPoint& p) { return p.tail < u; });
    if (it == points_.end()) {
        const auto& last = points_.back();
        return last.y * std::pow(u / last.tail, -1.0 / *exponent_);
    }
    const std::size_t j = static_cast<std::size_t>(it - points_.begin());
    const auto& a = points_[j - 1];
    const auto& b = points_[j];
    if (a.y > 0.0 && a.tail > 0.0 && b.tail > 0.0) {
        const double ratio = std::log(b.y / a.y) / std::log(b.tail / a.tail);
        return a.y * std::exp(std::log(u / a.tail) * ratio);
    }
    return a.y + (a.tail - u) / (a.tail - b.tail) * (b.y - a.y);
}

std::vector<double> TabulatedTail::knots() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.y);
    return out;
}

// ---------------------------------------------------------------------------
// GrainDistribution

GrainDistribution GrainDistribution::constant(double c) {
    require_positive(c, "constant grain length c");
    return GrainDistribution{Constant{c}};
}

GrainDistribution GrainDistribution::exponential(double mean) {
    require_positive(mean, "exponential mean");
    return GrainDistribution{Exponential{mean}};
}

GrainDistribution GrainDistribution::pareto(double alpha) {
    require_positive(alpha, "pareto alpha");
    return GrainDistribution{Pareto{alpha}};
}

GrainDistribution GrainDistribution::tabulated(TabulatedTail table) {
    return GrainDistribution{std::move(table)};
}

GrainDistribution::Kind GrainDistribution::kind() const {
    return std::visit(overloaded{[](const Constant&) { return Kind::Constant; },
                                 [](const Exponential&) { return Kind::Exponential; },
                                 [](const Pareto&) { return Kind::Pareto; },
                                 [](const TabulatedTail&) { return Kind::Tabulated; }},
                      law_);
}

double GrainDistribution::sample_from_uniform(double u, bool* clamped) const {
    double x = std::visit(overloaded{[](const Constant& d) { return d.c; },
                                     [u](const Exponential& d) { return -d.mean * std::log(u); },
                                     [u](const Pareto& d) { return std::pow(u, -1.0 / d.alpha); },
                                     [u](const TabulatedTail& d) { return d.inverse_tail(u); }},
                          law_);
    const bool overflow = !std::isfinite(x);
    if (overflow) x = std::numeric_limits<double>::max();
    if (clamped) *clamped = overflow;
    return x;
}

double GrainDistribution::sample(RandomSource& rng) const {
    return sample_from_uniform(rng.uniform());
}

double GrainDistribution::sample(RandomSource& rng, std::uint64_t& clamped) const {
    bool hit = false;
    const double x = sample_from_uniform(rng.uniform(), &hit);
    clamped += hit ? 1 : 0;
    return x;
}

double GrainDistribution::tail(double y) const {
    if (y < 0.0) return 1.0;
    return std::visit(overloaded{[y](const Constant& d) { return y < d.c ? 1.0 : 0.0; },
                                 [y](const Exponential& d) { return std::exp(-y / d.mean); },
                                 [y](const Pareto& d) { return y < 1.0 ? 1.0 : std::pow(y, -d.alpha); },
                                 [y](const TabulatedTail& d) { return d.tail(y); }},
                      law_);
}

double GrainDistribution::truncated_mean(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("truncated_mean: t must be >= 0");
    return std::visit(
        overloaded{[t](const Constant& d) { return std::min(t, d.c); },
                   [t](const Exponential& d) { return -d.mean * std::expm1(-t / d.mean); },
                   [t](const Pareto& d) {
                       if (t <= 1.0) return t;
                       // E(t∧ρ) = 1 + ∫_1^t s^{-α} ds
                       if (d.alpha == 1.0) return 1.0 + std::log(t);
                       return (std::pow(t, 1.0 - d.alpha) - d.alpha) / (1.0 - d.alpha);
                   },
                   [t](const TabulatedTail& d) { return d.truncated_mean(t); }},
        law_);
}

MeanValue GrainDistribution::mean() const {
    return std::visit(overloaded{[](const Constant& d) { return MeanValue::finite(d.c); },
                                 [](const Exponential& d) { return MeanValue::finite(d.mean); },
                                 [](const Pareto& d) {
                                     return d.alpha > 1.0 ? MeanValue::finite(d.alpha / (d.alpha - 1.0))
                                                          : MeanValue::infinite();
                                 },
                                 [](const TabulatedTail& d) { return d.mean(); }},
                      law_);
}

std::optional<double> GrainDistribution::support_max() const {
    if (const auto* c = std::get_if<Constant>(&law_)) return c->c;
    if (const auto* t = std::get_if<TabulatedTail>(&law_)) {
        if (!t->tail_exponent()) {
            // First node where the tail reaches zero.
            for (const auto& p : t->points()) {
                if (p.tail == 0.0) return p.y;
            }
        }
    }
    return std::nullopt;
}

std::vector<double> GrainDistribution::kinks() const {
    return std::visit(overloaded{[](const Constant& d) { return std::vector<double>{d.c}; },
                                 [](const Exponential&) { return std::vector<double>{}; },
                                 [](const Pareto&) { return std::vector<double>{1.0}; },
                                 [](const TabulatedTail& d) { return d.knots(); }},
                      law_);
}

double GrainDistribution::constant_value() const { return std::get<Constant>(law_).c; }
double GrainDistribution::exponential_mean() const { return std::get<Exponential>(law_).mean; }
double GrainDistribution::pareto_alpha() const { return std::get<Pareto>(law_).alpha; }
const TabulatedTail& GrainDistribution::table() const { return std::get<TabulatedTail>(law_); }

std::string GrainDistribution::spec() const {
    return std::visit(overloaded{[](const Constant& d) { return "constant:c=" + format_double(d.c); },
                                 [](const Exponential& d) { return "exponential:mean=" + format_double(d.mean); },
                                 [](const Pareto& d) { return "pareto:alpha=" + format_double(d.alpha); },
                                 [](const TabulatedTail& d) {
                                     return d.source().empty() ? std::string{"table:path=<inline>"}
                                                               : "table:path=" + d.source();
                                 }},
                      law_);
}

std::string to_string(GrainDistribution::Kind kind) {
    switch (kind) {
        case GrainDistribution::Kind::Constant: return "constant";
        case GrainDistribution::Kind::Exponential: return "exponential";
        case GrainDistribution::Kind::Pareto: return "pareto";
        case GrainDistribution::Kind::Tabulated: return "table";
    }
    return "unknown";
}

std::string format_double(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (std::isnan(x)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

double parse_number(const std::string& token, const std::string& context) {
    double v = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    const auto res = std::from_chars(first, last, v);
    if (token.empty() || res.ec != std::errc{} || res.ptr != last) {
        throw std::invalid_argument("malformed number '" + token + "' in distribution spec '" + context + "'");
    }
    return v;
}

}  // namespace

GrainDistribution parse_distribution(const std::string& spec) {
    std::vector<std::string> parts;
    {
        std::stringstream ss(spec);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (!spec.empty() && spec.back() == ':') parts.emplace_back();
    }
    if (parts.empty() || parts.front().empty()) {
        throw std::invalid_argument("empty distribution name in spec '" + spec + "'");
    }
    const std::string& name = parts.front();
    std::map<std::string, std::string> kv;
    for (std::size_t i = 1; i < parts.size(); ++i) {
        const auto eq = parts[i].find('=');
        if (eq == std::string::npos || eq == 0) {
            throw std::invalid_argument("malformed token '" + parts[i] + "' in distribution spec '" + spec +
                                        "' (expected key=value)");
        }
        kv[parts[i].substr(0, eq)] = parts[i].substr(eq + 1);
    }

    auto take = [&](const std::string& key) {
        const auto it = kv.find(key);
        if (it == kv.end()) {
            throw std::invalid_argument("missing parameter '" + key + "' for distribution '" + name + "'");
        }
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto finish = [&](GrainDistribution d) {
        if (!kv.empty()) {
            throw std::invalid_argument("unknown parameter '" + kv.begin()->first + "' for distribution '" + name +
                                        "'");
        }
        return d;
    };
    auto checked = [&](const std::string& key) {
        const std::string token = take(key);
        const double v = parse_number(token, spec);
        if (!(v > 0.0) || !std::isfinite(v)) {
            throw std::invalid_argument("parameter '" + key + "=" + token + "' must be positive in '" + spec + "'");
        }
        return v;
    };

    if (name == "constant") return finish(GrainDistribution::constant(checked("c")));
    if (name == "exponential") return finish(GrainDistribution::exponential(checked("mean")));
    if (name == "pareto") return finish(GrainDistribution::pareto(checked("alpha")));
    if (name == "table") {
        const std::string path = take("path");
        return finish(GrainDistribution::tabulated(load_tail_table(path)));
    }
    throw std::invalid_argument("unknown distribution '" + name + "' in spec '" + spec + "'");
}

TabulatedTail load_tail_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open tail table '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("tail table '" + path + "' is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "y,tail") {
        throw std::invalid_argument("tail table '" + path + "' must start with header 'y,tail', got '" + line + "'");
    }
    std::vector<TailPoint> pts;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("malformed tail table row '" + line + "'");
        pts.push_back({parse_number(line.substr(0, comma), path), parse_number(line.substr(comma + 1), path)});
    }
    return TabulatedTail(std::move(pts), path);
}

TabulatedTail tabulate(const GrainDistribution& dist, std::span<const double> ys) {
    std::vector<TailPoint> pts{{0.0, 1.0}};
    for (double y : ys) {
        if (y > pts.back().y) pts.push_back({y, dist.tail(y)});
    }
    return TabulatedTail(std::move(pts), "tabulated(" + dist.spec() + ")");
}

}  // namespace tabp
