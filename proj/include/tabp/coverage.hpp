#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "tabp/point_process.hpp"

namespace tabp {

struct Interval {
    double a;
    double b;

    double length() const { return b - a; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Maximal occupied and vacant intervals of [0, T]. Occupied intervals are
/// closed; a boundary point shared with a vacant interval counts as occupied.
struct ComponentDecomposition {
    double window = 0.0;
    std::vector<Interval> occupied;
    std::vector<Interval> vacant;
    /// Final component truncated by T.
    bool right_censored = false;
    /// First component truncated at 0 (full line only; on the half-line the
    /// gap starting at the origin is a genuine component).
    bool left_censored = false;
    double covered_length = 0.0;
    /// Vacant components with both ends determined inside the window.
    std::size_t n_vacant_complete = 0;
    /// Lengths of those complete gaps, in window order.
    std::vector<double> vacant_gap_lengths;
    /// Length of vacant intervals cut by either window edge.
    double censored_vacant_length = 0.0;
};

/// Coverage state at a window prefix [0, W].
struct PrefixStats {
    double window = 0.0;
    double covered_length = 0.0;
    std::size_t n_vacant_complete = 0;
};

struct SweepOptions {
    bool record_intervals = false;
    bool record_gaps = true;
    /// Points t at which vacancy is reported; any order, each in [0, T].
    std::vector<double> probes;
    /// Window prefixes W ∈ (0, T] at which PrefixStats are captured.
    std::vector<double> prefixes;
};

struct SweepResult {
    ComponentDecomposition decomposition;  // intervals only when recorded
    std::vector<bool> probe_vacant;        // aligned with SweepOptions::probes
    std::vector<PrefixStats> prefix_stats;  // aligned with SweepOptions::prefixes
    std::size_t germs_used = 0;
};

/// Single left-to-right pass over germs sorted by position, tracking the
/// running reach R = max(u + rho). A germ with u > R closes the current
/// occupied component at R and the vacant gap [R, u]. Memory is O(1) unless
/// intervals or gaps are recorded.
class CoverageSweep {
public:
    CoverageSweep(double window, Domain domain, SweepOptions options = {});

    /// Feeds the next germ (u <= T, non-decreasing u). Returns false once the
    /// window is fully decided (the reach passed T); further germs are ignored.
    bool push(const Germ& g);

    bool saturated() const { return in_component_ && reach_ >= window_; }

    SweepResult finish() &&;

private:
    struct Checkpoint {
        double t;
        std::size_t index;
    };

    void flush_checkpoints_before(double u);
    void evaluate_probe(double t, std::size_t index);
    void evaluate_prefix(double w, std::size_t index);
    void emit_occupied(double a, double b);
    void emit_vacant(double start, double end, bool complete);
    double current_component_covered(double limit) const;

    double window_;
    Domain domain_;
    SweepOptions options_;
    std::vector<Checkpoint> probe_order_;
    std::vector<Checkpoint> prefix_order_;
    std::size_t next_probe_ = 0;
    std::size_t next_prefix_ = 0;

    bool in_component_ = false;
    double component_start_ = 0.0;
    double reach_ = 0.0;
    double last_u_;
    bool first_gap_pending_ = true;

    SweepResult result_;
};

/// Decomposes a realization. Throws std::invalid_argument on unsorted germs.
ComponentDecomposition decompose(const Realization& real);

/// Fraction of [burn_in, T] covered; needs a decomposition with intervals.
double covered_fraction(const ComponentDecomposition& dec, double burn_in = 0.0);

/// True iff no germ u <= t has u + rho >= t (direct scan). Throws
/// std::out_of_range for t outside [0, T].
bool point_vacant(const Realization& real, double t);

/// Same question answered from the decomposition's intervals.
bool point_vacant(const ComponentDecomposition& dec, double t);

/// CSV `kind,a,b` with kind ∈ {occ, vac}, components in window order.
void write_decomposition_csv(std::ostream& out, const ComponentDecomposition& dec);

/// JSON {T, covered_length, n_vacant_complete, right_censored}.
std::string decomposition_summary_json(const ComponentDecomposition& dec);

}  // namespace tabp
