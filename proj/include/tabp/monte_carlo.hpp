#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tabp/classifier.hpp"
#include "tabp/coverage.hpp"
#include "tabp/point_process.hpp"
#include "tabp/stats.hpp"

namespace tabp {

struct McConfig {
    ModelParams params;
    double window = 1000.0;
    std::size_t replicates = 1000;
    std::uint64_t master_seed = 1;
    double burn_in = 0.0;
    std::vector<double> probes;
    /// Nested windows for N_v(T) growth; defaults to decades from 100 up to T
    /// when empty and the model is in regime III.
    std::vector<double> ladder;
    double buffer_epsilon = kDefaultBufferEpsilon;
    /// Comparisons pass within this many standard errors.
    double threshold_se = 4.0;
    /// 0 means std::thread::hardware_concurrency().
    unsigned workers = 0;
    /// Minimum pooled gaps before the KS test is run.
    std::size_t min_ks_sample = 500;
    /// Minimum replicates before the geometric chi-square test is run.
    std::size_t min_chi_square_sample = 500;

    /// Throws std::invalid_argument when a precondition fails.
    void validate() const;
};

/// Everything one replicate contributes; aggregation folds these in index order.
struct ReplicateRecord {
    double covered_fraction = 0.0;  // on [burn_in, T]
    double vacant_length = 0.0;     // on [0, T]
    std::size_t n_vacant = 0;       // complete vacant components in [0, T]
    std::vector<double> gap_lengths;
    std::vector<bool> probe_vacant;
    std::vector<PrefixStats> ladder;
    bool right_censored = false;
    bool left_censored = false;
    double censored_vacant_length = 0.0;
    std::uint64_t clamped = 0;
    std::size_t germs_used = 0;
};

/// Per-run quantities shared by all replicates.
struct RunPlan {
    double left_buffer = 0.0;  // full line only
    std::vector<double> ladder;
};

RunPlan make_plan(const McConfig& cfg, const RegimeVerdict& verdict);

/// Simulates replicate `index` with the stream derived from (seed, index).
/// Germ generation stops once the reach passes T; the result equals the
/// decomposition of the full realization.
ReplicateRecord simulate_replicate(const McConfig& cfg, const RunPlan& plan, std::uint64_t index);

/// Runs all replicates on `cfg.workers` threads. Output is in replicate order
/// and independent of the worker count.
std::vector<ReplicateRecord> run_replicates(const McConfig& cfg, const RunPlan& plan);

enum class Outcome { Pass, Fail, Unavailable, Skipped };

std::string to_string(Outcome o);

/// Estimate against its analytic prediction.
struct Comparison {
    std::string name;
    double estimate = 0.0;
    double se = 0.0;  // NaN when unavailable
    std::size_t n = 0;
    double expected = 0.0;
    /// Scale used for the pass test (null-hypothesis SE for proportions).
    double sigma = 0.0;
    double z = 0.0;
    /// Additional absolute tolerance, e.g. a relative band for asymptotic
    /// predictions. The test passes within max(threshold * sigma, tolerance).
    double tolerance = 0.0;
    Outcome outcome = Outcome::Unavailable;
    std::string note;
};

struct HypothesisTest {
    std::string name;
    stats::TestResult result;
    double alpha = 0.01;
    Outcome outcome = Outcome::Skipped;
    std::string note;
};

struct LadderPoint {
    double window = 0.0;
    stats::MeanEstimate covered_fraction;
    stats::MeanEstimate n_vacant;
    double expected_n_vacant = 0.0;
};

/// Pass/fail property without a single numeric target.
struct Check {
    std::string name;
    bool ok = false;
    std::string detail;
};

struct McDiagnostics {
    std::uint64_t clamped_samples = 0;
    double right_censoring_rate = 0.0;
    double left_censoring_rate = 0.0;
    std::size_t complete_gaps = 0;
    std::size_t pooled_gaps = 0;
    double mean_germs_used = 0.0;
    double left_buffer = 0.0;
};

struct McReport {
    McConfig config;
    RegimeVerdict verdict;
    std::vector<Comparison> vacancy;
    std::vector<Comparison> covered_fraction;
    std::vector<Comparison> vacant_stats;
    std::vector<HypothesisTest> tests;
    std::vector<LadderPoint> ladder;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    McDiagnostics diagnostics;

    bool passed() const;
};

/// Section builders; each compares against the closed forms. The report's
/// config and verdict must be set.
void estimate_vacancy(const std::vector<ReplicateRecord>& records, McReport& report);
void estimate_covered_fraction(const std::vector<ReplicateRecord>& records, McReport& report);
void estimate_vacant_stats(const std::vector<ReplicateRecord>& records, const RunPlan& plan, McReport& report);

/// Runs every estimator and flags each comparison PASS/FAIL. Deterministic
/// for a fixed config regardless of worker count.
McReport verify(const McConfig& cfg);
/// Same, on precomputed records (e.g. to also dump them as CSV).
McReport verify(const McConfig& cfg, const RunPlan& plan, const std::vector<ReplicateRecord>& records);

}  // namespace tabp
