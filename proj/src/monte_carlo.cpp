#include "tabp/monte_carlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "tabp/analytics.hpp"

namespace tabp {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

/// Fills sigma/z/outcome of a comparison.
void judge(Comparison& c, double threshold) {
    if (c.n < 2 || !std::isfinite(c.sigma)) {
        c.outcome = Outcome::Unavailable;
        c.z = kNaN;
        if (c.note.empty()) c.note = "standard error unavailable";
        return;
    }
    const double diff = std::abs(c.estimate - c.expected);
    c.z = c.sigma > 0.0 ? (c.estimate - c.expected) / c.sigma : (diff == 0.0 ? 0.0 : kNaN);
    const double allowed = std::max(threshold * c.sigma, c.tolerance);
    c.outcome = diff <= allowed ? Outcome::Pass : Outcome::Fail;
}

Comparison mean_comparison(std::string name, const stats::MeanEstimate& est, double expected, double threshold,
                           double tolerance = 0.0) {
    Comparison c;
    c.name = std::move(name);
    c.estimate = est.mean;
    c.se = est.se;
    c.n = est.n;
    c.expected = expected;
    c.sigma = est.se;
    c.tolerance = tolerance;
    judge(c, threshold);
    return c;
}

/// Expected covered length of [0, w] for the configured domain.
double expected_vacant_prefix(const ClosedForms& cf, Domain domain, double w) {
    if (w <= 0.0) return 0.0;
    if (domain == Domain::FullLine) return w * (1.0 - cf.covered_volume_fraction());
    return cf.expected_vacant_length(w);
}

}  // namespace

void McConfig::validate() const {
    params.validate();
    if (!(window > 0.0) || !std::isfinite(window)) throw std::invalid_argument("window T must be positive");
    if (replicates < 1) throw std::invalid_argument("replicates must be >= 1");
    if (!(burn_in >= 0.0 && burn_in < window)) throw std::invalid_argument("burn-in must lie in [0, T)");
    for (double t : probes) {
        if (!(t >= 0.0 && t <= window)) throw std::invalid_argument("probe point " + fmt(t) + " outside [0, T]");
    }
    for (double w : ladder) {
        if (!(w > 0.0 && w <= window)) throw std::invalid_argument("ladder window " + fmt(w) + " outside (0, T]");
    }
    if (!(threshold_se > 0.0)) throw std::invalid_argument("threshold must be positive");
    if (params.domain == Domain::FullLine && !params.dist.mean().is_finite()) {
        throw std::invalid_argument(
            "full-line window not simulable: infinite-mean grains cover the entire line a.s.");
    }
}

RunPlan make_plan(const McConfig& cfg, const RegimeVerdict& verdict) {
    RunPlan plan;
    if (cfg.params.domain == Domain::FullLine) plan.left_buffer = left_buffer(cfg.params, cfg.buffer_epsilon);
    plan.ladder = cfg.ladder;
    if (plan.ladder.empty() && verdict.regime == Regime::III && cfg.params.domain == Domain::HalfLine) {
        for (double w = 100.0; w < cfg.window; w *= 10.0) plan.ladder.push_back(w);
        plan.ladder.push_back(cfg.window);
    }
    std::sort(plan.ladder.begin(), plan.ladder.end());
    plan.ladder.erase(std::unique(plan.ladder.begin(), plan.ladder.end()), plan.ladder.end());
    return plan;
}

ReplicateRecord simulate_replicate(const McConfig& cfg, const RunPlan& plan, std::uint64_t index) {
    RandomSource rng = RandomSource::for_replicate(cfg.master_seed, index);
    SweepOptions opts;
    opts.record_gaps = true;
    opts.probes = cfg.probes;
    opts.prefixes = plan.ladder;
    const bool has_burn_in = cfg.burn_in > 0.0;
    if (has_burn_in) opts.prefixes.push_back(cfg.burn_in);

    CoverageSweep sweep(cfg.window, cfg.params.domain, std::move(opts));
    const double start = cfg.params.domain == Domain::FullLine ? -plan.left_buffer : 0.0;
    GermStream stream(cfg.params, start, rng);
    for (double u = stream.advance(); u <= cfg.window; u = stream.advance()) {
        if (!sweep.push({u, stream.mark()})) break;
    }
    SweepResult res = std::move(sweep).finish();
    auto& dec = res.decomposition;

    ReplicateRecord rec;
    const double covered_before = has_burn_in ? res.prefix_stats.back().covered_length : 0.0;
    rec.covered_fraction =
        std::clamp((dec.covered_length - covered_before) / (cfg.window - cfg.burn_in), 0.0, 1.0);
    rec.vacant_length = cfg.window - dec.covered_length;
    rec.n_vacant = dec.n_vacant_complete;
    rec.gap_lengths = std::move(dec.vacant_gap_lengths);
    rec.probe_vacant = std::move(res.probe_vacant);
    rec.ladder.assign(res.prefix_stats.begin(), res.prefix_stats.begin() + static_cast<long>(plan.ladder.size()));
    rec.right_censored = dec.right_censored;
    rec.left_censored = dec.left_censored;
    rec.censored_vacant_length = dec.censored_vacant_length;
    rec.clamped = stream.clamped();
    rec.germs_used = res.germs_used;
    return rec;
}

std::vector<ReplicateRecord> run_replicates(const McConfig& cfg, const RunPlan& plan) {
    std::vector<ReplicateRecord> records(cfg.replicates);
    unsigned workers = cfg.workers ? cfg.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.replicates));

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next.fetch_add(1); i < records.size(); i = next.fetch_add(1)) {
            records[i] = simulate_replicate(cfg, plan, i);
        }
    };
    if (workers <= 1) {
        work();
        return records;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    return records;
}

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::Pass: return "PASS";
        case Outcome::Fail: return "FAIL";
        case Outcome::Unavailable: return "N/A";
        case Outcome::Skipped: return "SKIP";
    }
    return "N/A";
}

bool McReport::passed() const {
    auto failed = [](const auto& xs) {
        return std::any_of(xs.begin(), xs.end(), [](const auto& x) { return x.outcome == Outcome::Fail; });
    };
    const bool checks_ok = std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
    return !failed(vacancy) && !failed(covered_fraction) && !failed(vacant_stats) && !failed(tests) && checks_ok;
}

void estimate_vacancy(const std::vector<ReplicateRecord>& records, McReport& report) {
    const McConfig& cfg = report.config;
    const ClosedForms cf(cfg.params);
    const double stationary = 1.0 - cf.covered_volume_fraction();
    for (std::size_t k = 0; k < cfg.probes.size(); ++k) {
        const double t = cfg.probes[k];
        std::size_t hits = 0;
        for (const auto& r : records) hits += r.probe_vacant[k] ? 1 : 0;
        const auto est = stats::proportion(hits, records.size());
        const double p0 = cfg.params.domain == Domain::HalfLine ? cf.vacancy_probability(t) : stationary;

        Comparison c;
        c.name = "vacancy(t=" + fmt(t) + ")";
        c.estimate = est.mean;
        c.se = est.se;
        c.n = est.n;
        c.expected = p0;
        // Binomial SE under the predicted probability.
        c.sigma = std::sqrt(p0 * (1.0 - p0) / static_cast<double>(records.size()));
        judge(c, cfg.threshold_se);
        report.vacancy.push_back(std::move(c));
    }
}

void estimate_covered_fraction(const std::vector<ReplicateRecord>& records, McReport& report) {
    const McConfig& cfg = report.config;
    const ClosedForms cf(cfg.params);
    std::vector<double> xs;
    xs.reserve(records.size());
    for (const auto& r : records) xs.push_back(r.covered_fraction);
    const auto est = stats::mean_and_se(xs);

    // Finite-window expectation; equals the long-run fraction on the full line.
    const double span = cfg.window - cfg.burn_in;
    const double vacant = expected_vacant_prefix(cf, cfg.params.domain, cfg.window) -
                          expected_vacant_prefix(cf, cfg.params.domain, cfg.burn_in);
    Comparison c = mean_comparison("covered_fraction", est, 1.0 - vacant / span, cfg.threshold_se);
    c.note = "long-run covered volume fraction " + fmt(cf.covered_volume_fraction());
    report.covered_fraction.push_back(std::move(c));
    if (cfg.window < 100.0 / cfg.params.lambda) {
        report.notes.push_back("window shorter than 100/lambda; covered fraction far from its limit");
    }
}

void estimate_vacant_stats(const std::vector<ReplicateRecord>& records, const RunPlan& plan, McReport& report) {
    const McConfig& cfg = report.config;
    const ClosedForms cf(cfg.params);
    const double lambda = cfg.params.lambda;
    const bool half = cfg.params.domain == Domain::HalfLine;

    // (a) total vacant length on [0, T]
    {
        std::vector<double> xs;
        for (const auto& r : records) xs.push_back(r.vacant_length);
        report.vacant_stats.push_back(mean_comparison("vacant_length", stats::mean_and_se(xs),
                                                      expected_vacant_prefix(cf, cfg.params.domain, cfg.window),
                                                      cfg.threshold_se));
    }

    // (b) pooled complete gaps: exponential with rate lambda
    std::vector<double> gaps;
    for (const auto& r : records) gaps.insert(gaps.end(), r.gap_lengths.begin(), r.gap_lengths.end());
    report.vacant_stats.push_back(
        mean_comparison("gap_mean", stats::mean_and_se(gaps), 1.0 / lambda, cfg.threshold_se));
    {
        HypothesisTest t;
        t.name = "gap_exponential_ks";
        if (gaps.size() >= cfg.min_ks_sample) {
            t.result = stats::ks_test(gaps, [lambda](double x) { return -std::expm1(-lambda * x); });
            t.outcome = t.result.p_value > t.alpha ? Outcome::Pass : Outcome::Fail;
        } else {
            t.result.n = gaps.size();
            t.note = "fewer than " + std::to_string(cfg.min_ks_sample) + " complete gaps";
        }
        report.tests.push_back(std::move(t));
    }

    // (c) geometric N_v in regime II
    HypothesisTest geo;
    geo.name = "n_vacant_geometric_chi2";
    if (report.verdict.regime == Regime::II && half) {
        const double env = cf.expected_num_vacant();
        std::vector<double> counts;
        for (const auto& r : records) counts.push_back(static_cast<double>(r.n_vacant));
        Comparison c = mean_comparison("n_vacant", stats::mean_and_se(counts), env, cfg.threshold_se);
        const double bias = env / lambda - cf.expected_vacant_length(cfg.window);
        if (bias >= 1e-3) {
            c.note = "window truncation bias in expected vacant length " + fmt(bias) + " >= 1e-3";
            report.notes.push_back("n_vacant: T too small for the total count; " + c.note);
        }
        report.vacant_stats.push_back(std::move(c));

        const double p = 1.0 / env;
        std::vector<double> observed(4, 0.0);
        std::size_t zeros = 0;
        for (const auto& r : records) {
            if (r.n_vacant == 0) ++zeros;
            observed[std::min<std::size_t>(std::max<std::size_t>(r.n_vacant, 1), 4) - 1] += 1.0;
        }
        const double n = static_cast<double>(records.size());
        std::vector<double> expected{n * p, n * p * (1 - p), n * p * (1 - p) * (1 - p), n * std::pow(1 - p, 3)};
        const bool sparse = std::any_of(expected.begin(), expected.end(), [](double e) { return e < 5.0; });
        if (records.size() < cfg.min_chi_square_sample || sparse) {
            geo.note = "too few replicates for the chi-square approximation";
        } else {
            geo.result = stats::chi_square_test(observed, expected);
            geo.outcome = geo.result.p_value > geo.alpha ? Outcome::Pass : Outcome::Fail;
            geo.note = "bins {1,2,3,>=4}, p = " + fmt(p);
        }
        if (zeros > 0) geo.note += "; " + std::to_string(zeros) + " replicates without a complete gap counted as 1";
    } else {
        geo.note = "skipped: verdict is not regime II on the half-line";
    }
    report.tests.push_back(std::move(geo));

    // (d) growth of N_v over nested windows
    if (!plan.ladder.empty()) {
        for (std::size_t k = 0; k < plan.ladder.size(); ++k) {
            std::vector<double> nv;
            std::vector<double> frac;
            const double w = plan.ladder[k];
            for (const auto& r : records) {
                nv.push_back(static_cast<double>(r.ladder[k].n_vacant_complete));
                frac.push_back(r.ladder[k].covered_length / w);
            }
            LadderPoint lp;
            lp.window = w;
            lp.n_vacant = stats::mean_and_se(nv);
            lp.covered_fraction = stats::mean_and_se(frac);
            lp.expected_n_vacant = half ? lambda * cf.expected_vacant_length(w) : kNaN;
            report.ladder.push_back(lp);
            if (half) {
                report.vacant_stats.push_back(mean_comparison("n_vacant(T=" + fmt(w) + ")", lp.n_vacant,
                                                              lp.expected_n_vacant, cfg.threshold_se,
                                                              0.1 * lp.expected_n_vacant));
            }
        }
        if (report.ladder.size() >= 2) {
            Check grow{"n_vacant_strictly_increasing", true, ""};
            Check cover{"covered_fraction_increasing", true, ""};
            for (std::size_t k = 1; k < report.ladder.size(); ++k) {
                const auto& a = report.ladder[k - 1];
                const auto& b = report.ladder[k];
                grow.ok = grow.ok && b.n_vacant.mean > a.n_vacant.mean;
                cover.ok = cover.ok && b.covered_fraction.mean > a.covered_fraction.mean;
            }
            grow.detail = "mean N_v from " + fmt(report.ladder.front().n_vacant.mean) + " to " +
                          fmt(report.ladder.back().n_vacant.mean);
            cover.detail = "mean covered fraction from " + fmt(report.ladder.front().covered_fraction.mean) +
                           " to " + fmt(report.ladder.back().covered_fraction.mean);
            if (report.verdict.regime == Regime::III) {
                report.checks.push_back(std::move(grow));
                report.checks.push_back(std::move(cover));
            } else {
                report.notes.push_back(grow.detail);
            }
        }
    }

    // Censoring accounting.
    auto& d = report.diagnostics;
    std::size_t right = 0;
    std::size_t left = 0;
    double germs = 0.0;
    for (const auto& r : records) {
        d.complete_gaps += r.n_vacant;
        d.clamped_samples += r.clamped;
        right += r.right_censored ? 1 : 0;
        left += r.left_censored ? 1 : 0;
        germs += static_cast<double>(r.germs_used);
    }
    d.pooled_gaps = gaps.size();
    const double n = static_cast<double>(records.size());
    d.right_censoring_rate = static_cast<double>(right) / n;
    d.left_censoring_rate = static_cast<double>(left) / n;
    d.mean_germs_used = germs / n;
    d.left_buffer = plan.left_buffer;
    report.checks.push_back({"censoring_accounting", d.complete_gaps == d.pooled_gaps,
                             std::to_string(d.complete_gaps) + " complete gaps, " + std::to_string(d.pooled_gaps) +
                                 " pooled"});
}

McReport verify(const McConfig& cfg, const RunPlan& plan, const std::vector<ReplicateRecord>& records) {
    McReport report;
    report.config = cfg;
    report.verdict = classify(cfg.params);
    if (!cfg.probes.empty()) estimate_vacancy(records, report);
    estimate_covered_fraction(records, report);
    estimate_vacant_stats(records, plan, report);
    if (cfg.replicates < 2) report.notes.push_back("single replicate: standard errors unavailable");
    return report;
}

McReport verify(const McConfig& cfg) {
    cfg.validate();
    const RunPlan plan = make_plan(cfg, classify(cfg.params));
    const auto records = run_replicates(cfg, plan);
    return verify(cfg, plan, records);
}

}  // namespace tabp
