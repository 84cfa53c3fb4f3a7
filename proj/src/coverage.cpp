#include "tabp/coverage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace tabp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

CoverageSweep::CoverageSweep(double window, Domain domain, SweepOptions options)
    : window_{window}, domain_{domain}, options_{std::move(options)}, last_u_{kNegInf} {
    if (!(window > 0.0) || !std::isfinite(window)) throw std::invalid_argument("window length must be positive");
    for (std::size_t i = 0; i < options_.probes.size(); ++i) {
        const double t = options_.probes[i];
        if (!(t >= 0.0 && t <= window_)) {
            throw std::out_of_range("probe point " + format_double(t) + " outside window [0, T]");
        }
        probe_order_.push_back({t, i});
    }
    for (std::size_t i = 0; i < options_.prefixes.size(); ++i) {
        const double w = options_.prefixes[i];
        if (!(w >= 0.0 && w <= window_)) {
            throw std::out_of_range("prefix window " + format_double(w) + " outside [0, T]");
        }
        prefix_order_.push_back({w, i});
    }
    auto by_t = [](const Checkpoint& a, const Checkpoint& b) { return a.t < b.t; };
    std::stable_sort(probe_order_.begin(), probe_order_.end(), by_t);
    std::stable_sort(prefix_order_.begin(), prefix_order_.end(), by_t);

    result_.decomposition.window = window_;
    result_.probe_vacant.assign(options_.probes.size(), false);
    result_.prefix_stats.assign(options_.prefixes.size(), PrefixStats{});
}

double CoverageSweep::current_component_covered(double limit) const {
    if (!in_component_) return 0.0;
    return std::max(0.0, std::min(reach_, limit) - std::max(component_start_, 0.0));
}

void CoverageSweep::evaluate_probe(double t, std::size_t index) {
    result_.probe_vacant[index] = !(in_component_ && reach_ >= t);
}

void CoverageSweep::evaluate_prefix(double w, std::size_t index) {
    auto& out = result_.prefix_stats[index];
    out.window = w;
    out.covered_length = result_.decomposition.covered_length + current_component_covered(w);
    out.n_vacant_complete = result_.decomposition.n_vacant_complete;
}

void CoverageSweep::flush_checkpoints_before(double u) {
    while (next_probe_ < probe_order_.size() && probe_order_[next_probe_].t < u) {
        evaluate_probe(probe_order_[next_probe_].t, probe_order_[next_probe_].index);
        ++next_probe_;
    }
    while (next_prefix_ < prefix_order_.size() && prefix_order_[next_prefix_].t < u) {
        evaluate_prefix(prefix_order_[next_prefix_].t, prefix_order_[next_prefix_].index);
        ++next_prefix_;
    }
}

void CoverageSweep::emit_occupied(double a, double b) {
    const double lo = std::max(a, 0.0);
    const double hi = std::min(b, window_);
    if (!(hi > lo)) return;
    auto& dec = result_.decomposition;
    if (a < 0.0) dec.left_censored = true;
    dec.covered_length += hi - lo;
    if (options_.record_intervals) dec.occupied.push_back({lo, hi});
}

void CoverageSweep::emit_vacant(double start, double end, bool complete) {
    if (!(end > start)) return;
    const double lo = std::max(start, 0.0);
    const double hi = std::min(end, window_);
    if (!(hi > lo)) return;
    auto& dec = result_.decomposition;
    if (start < 0.0) dec.left_censored = true;
    if (complete) {
        ++dec.n_vacant_complete;
        if (options_.record_gaps) dec.vacant_gap_lengths.push_back(hi - lo);
    } else {
        dec.censored_vacant_length += hi - lo;
    }
    if (options_.record_intervals) dec.vacant.push_back({lo, hi});
}

bool CoverageSweep::push(const Germ& g) {
    if (saturated()) return false;
    if (g.u < last_u_) throw std::invalid_argument("germs must be sorted by position");
    if (g.u > window_) throw std::invalid_argument("germ beyond the window end");
    last_u_ = g.u;
    flush_checkpoints_before(g.u);

    if (!in_component_ || g.u > reach_) {
        // The half-line's first gap starts at the origin (a genuine component);
        // on the full line anything reaching back past 0 is left-censored.
        const double initial = domain_ == Domain::HalfLine ? 0.0 : kNegInf;
        const double gap_start = in_component_ ? reach_ : initial;
        if (in_component_) emit_occupied(component_start_, reach_);
        emit_vacant(gap_start, g.u, gap_start >= 0.0);
        in_component_ = true;
        component_start_ = g.u;
        reach_ = g.reach();
    } else {
        reach_ = std::max(reach_, g.reach());
    }
    ++result_.germs_used;
    return !saturated();
}

SweepResult CoverageSweep::finish() && {
    flush_checkpoints_before(std::numeric_limits<double>::infinity());
    auto& dec = result_.decomposition;
    if (in_component_) {
        emit_occupied(component_start_, reach_);
        if (reach_ < window_) {
            emit_vacant(reach_, window_, false);
            dec.right_censored = true;
        } else {
            dec.right_censored = reach_ > window_;
        }
    } else {
        emit_vacant(domain_ == Domain::HalfLine ? 0.0 : kNegInf, window_, false);
        dec.right_censored = true;
    }
    return std::move(result_);
}

ComponentDecomposition decompose(const Realization& real) {
    for (std::size_t i = 1; i < real.germs.size(); ++i) {
        if (real.germs[i].u < real.germs[i - 1].u) {
            throw std::invalid_argument("decompose: germs are not sorted by position");
        }
    }
    if (real.domain == Domain::HalfLine && !real.germs.empty() && real.germs.front().u < 0.0) {
        throw std::invalid_argument("decompose: half-line realization has a germ left of 0");
    }
    SweepOptions opts;
    opts.record_intervals = true;
    CoverageSweep sweep(real.window, real.domain, opts);
    for (const auto& g : real.germs) {
        if (!sweep.push(g)) break;
    }
    return std::move(sweep).finish().decomposition;
}

double covered_fraction(const ComponentDecomposition& dec, double burn_in) {
    if (!(burn_in >= 0.0 && burn_in < dec.window)) throw std::invalid_argument("burn-in must lie in [0, T)");
    double covered = 0.0;
    for (const auto& iv : dec.occupied) {
        covered += std::max(0.0, std::min(iv.b, dec.window) - std::max(iv.a, burn_in));
    }
    return std::clamp(covered / (dec.window - burn_in), 0.0, 1.0);
}

bool point_vacant(const Realization& real, double t) {
    if (!(t >= 0.0 && t <= real.window)) throw std::out_of_range("point outside window [0, T]");
    for (const auto& g : real.germs) {
        if (g.u > t) break;
        if (g.reach() >= t) return false;
    }
    return true;
}

bool point_vacant(const ComponentDecomposition& dec, double t) {
    if (!(t >= 0.0 && t <= dec.window)) throw std::out_of_range("point outside window [0, T]");
    // First occupied interval whose right end is >= t.
    const auto it = std::lower_bound(dec.occupied.begin(), dec.occupied.end(), t,
                                     [](const Interval& iv, double v) { return iv.b < v; });
    return it == dec.occupied.end() || it->a > t;
}

void write_decomposition_csv(std::ostream& out, const ComponentDecomposition& dec) {
    out << "kind,a,b\n";
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < dec.occupied.size() || j < dec.vacant.size()) {
        const bool take_occ =
            j >= dec.vacant.size() || (i < dec.occupied.size() && dec.occupied[i].a < dec.vacant[j].a);
        const Interval& iv = take_occ ? dec.occupied[i++] : dec.vacant[j++];
        out << (take_occ ? "occ" : "vac") << ',' << format_double(iv.a) << ',' << format_double(iv.b) << '\n';
    }
}

std::string decomposition_summary_json(const ComponentDecomposition& dec) {
    nlohmann::ordered_json j;
    j["T"] = dec.window;
    j["covered_length"] = dec.covered_length;
    j["n_vacant_complete"] = dec.n_vacant_complete;
    j["right_censored"] = dec.right_censored;
    return j.dump();
}

}  // namespace tabp
