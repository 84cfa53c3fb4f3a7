#include "tabp/report.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace tabp {

namespace {

/// Infinite values become the string "inf"; NaN becomes null.
Json number(double x) {
    if (std::isnan(x)) return nullptr;
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return x;
}

std::string integral_status(const VacancyIntegral& v) {
    switch (v.status) {
        case VacancyIntegral::Status::Finite: return "finite";
        case VacancyIntegral::Status::Infinite: return "infinite";
        case VacancyIntegral::Status::Undetermined: return "undetermined";
    }
    return "undetermined";
}

Json comparison_json(const Comparison& c) {
    Json j;
    j["name"] = c.name;
    j["estimate"] = number(c.estimate);
    j["se"] = number(c.se);
    j["n"] = c.n;
    j["expected"] = number(c.expected);
    j["z"] = number(c.z);
    if (c.tolerance > 0.0) j["tolerance"] = c.tolerance;
    j["outcome"] = to_string(c.outcome);
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

Json estimate_json(const stats::MeanEstimate& e) {
    return Json{{"mean", number(e.mean)}, {"se", number(e.se)}, {"n", e.n}};
}

}  // namespace

Json params_json(const ModelParams& params) {
    return Json{{"lambda", params.lambda}, {"dist", params.dist.spec()}, {"domain", to_string(params.domain)}};
}

Json verdict_json(const ModelParams& params, const RegimeVerdict& v) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["params"] = params_json(params);
    j["regime"] = to_string(v.regime);
    j["unbounded_component"] = to_string(unbounded_component_exists(v));
    j["mean_rho"] = number(v.mean_rho.as_double());
    Json integral;
    integral["status"] = integral_status(v.integral);
    if (v.integral.is_finite()) integral["value"] = v.integral.value;
    j["integral"] = integral;
    j["method"] = to_string(v.method);
    Json diag;
    diag["integrand_exponent"] = number(v.integrand_exponent);
    diag["truncation_point"] = number(v.truncation_point);
    if (!v.tail_certificate.empty()) diag["tail_certificate"] = v.tail_certificate;
    j["diagnostics"] = diag;
    return j;
}

Json analytics_json(const ClosedForms& cf, const std::vector<double>& probes, const std::vector<double>& windows) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["params"] = params_json(cf.params());
    j["cvf"] = cf.covered_volume_fraction();
    const double env = cf.expected_num_vacant();
    j["E_Nv"] = number(env);
    const auto p = cf.nv_geometric_parameter();
    j["p_geometric"] = p ? Json(*p) : (std::isnan(env) ? Json(nullptr) : Json(0.0));
    Json vac = Json::array();
    for (double t : probes) vac.push_back(Json::array({t, cf.vacancy_probability(t)}));
    j["vacancy"] = vac;
    if (!windows.empty()) {
        Json evl = Json::array();
        for (double w : windows) evl.push_back(Json::array({w, number(cf.expected_vacant_length(w))}));
        j["expected_vacant_length"] = evl;
    }
    return j;
}

Json report_json(const McReport& r) {
    const McConfig& cfg = r.config;
    Json j;
    j["schema"] = kSchemaVersion;
    j["config"] = Json{{"params", params_json(cfg.params)},
                       {"T", cfg.window},
                       {"replicates", cfg.replicates},
                       {"seed", cfg.master_seed},
                       {"burn_in", cfg.burn_in},
                       {"probes", cfg.probes},
                       {"threshold_se", cfg.threshold_se}};
    j["regime"] = to_string(r.verdict.regime);
    j["passed"] = r.passed();

    auto list = [](const std::vector<Comparison>& cs) {
        Json a = Json::array();
        for (const auto& c : cs) a.push_back(comparison_json(c));
        return a;
    };
    j["vacancy"] = list(r.vacancy);
    j["covered_fraction"] = list(r.covered_fraction);
    j["vacant_stats"] = list(r.vacant_stats);

    Json tests = Json::array();
    for (const auto& t : r.tests) {
        Json tj;
        tj["name"] = t.name;
        tj["statistic"] = number(t.result.statistic);
        tj["p_value"] = number(t.result.p_value);
        tj["n"] = t.result.n;
        if (t.result.dof) tj["dof"] = t.result.dof;
        tj["alpha"] = t.alpha;
        tj["outcome"] = to_string(t.outcome);
        if (!t.note.empty()) tj["note"] = t.note;
        tests.push_back(tj);
    }
    j["tests"] = tests;

    Json ladder = Json::array();
    for (const auto& lp : r.ladder) {
        ladder.push_back(Json{{"T", lp.window},
                              {"covered_fraction", estimate_json(lp.covered_fraction)},
                              {"n_vacant", estimate_json(lp.n_vacant)},
                              {"expected_n_vacant", number(lp.expected_n_vacant)}});
    }
    j["ladder"] = ladder;

    Json checks = Json::array();
    for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    j["checks"] = checks;
    j["notes"] = r.notes;

    const auto& d = r.diagnostics;
    j["diagnostics"] = Json{{"clamped_samples", d.clamped_samples},
                            {"right_censoring_rate", d.right_censoring_rate},
                            {"left_censoring_rate", d.left_censoring_rate},
                            {"complete_gaps", d.complete_gaps},
                            {"pooled_gaps", d.pooled_gaps},
                            {"mean_germs_used", d.mean_germs_used},
                            {"left_buffer", d.left_buffer}};
    return j;
}

std::string report_text(const McReport& r) {
    std::ostringstream os;
    const auto& cfg = r.config;
    os << "lambda=" << cfg.params.lambda << "  dist=" << cfg.params.dist.spec() << "  domain="
       << to_string(cfg.params.domain) << "  T=" << cfg.window << "  reps=" << cfg.replicates
       << "  seed=" << cfg.master_seed << "  regime=" << to_string(r.verdict.regime) << "\n\n";

    os << std::left << std::setw(28) << "quantity" << std::right << std::setw(14) << "estimate" << std::setw(12)
       << "se" << std::setw(14) << "expected" << std::setw(10) << "z" << std::setw(8) << "result" << '\n';
    auto row = [&](const Comparison& c) {
        os << std::left << std::setw(28) << c.name << std::right << std::setprecision(6) << std::setw(14)
           << c.estimate << std::setw(12) << c.se << std::setw(14) << c.expected << std::setw(10)
           << std::setprecision(3) << c.z << std::setw(8) << to_string(c.outcome) << '\n';
    };
    for (const auto& c : r.vacancy) row(c);
    for (const auto& c : r.covered_fraction) row(c);
    for (const auto& c : r.vacant_stats) row(c);

    os << '\n' << std::left << std::setw(28) << "test" << std::right << std::setw(14) << "statistic" << std::setw(12)
       << "p-value" << std::setw(14) << "n" << std::setw(18) << "result" << '\n';
    for (const auto& t : r.tests) {
        os << std::left << std::setw(28) << t.name << std::right << std::setprecision(6) << std::setw(14)
           << t.result.statistic << std::setw(12) << t.result.p_value << std::setw(14) << t.result.n
           << std::setw(18) << to_string(t.outcome) << '\n';
    }
    if (!r.ladder.empty()) {
        os << '\n' << std::setw(12) << "T" << std::setw(16) << "covered" << std::setw(12) << "N_v" << std::setw(12)
           << "se" << std::setw(14) << "expected" << '\n';
        for (const auto& lp : r.ladder) {
            os << std::setprecision(6) << std::setw(12) << lp.window << std::setw(16) << lp.covered_fraction.mean
               << std::setw(12) << lp.n_vacant.mean << std::setw(12) << lp.n_vacant.se << std::setw(14)
               << lp.expected_n_vacant << '\n';
        }
    }
    for (const auto& c : r.checks) os << (c.ok ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.detail << '\n';
    for (const auto& n : r.notes) os << "note: " << n << '\n';
    os << "\noverall: " << (r.passed() ? "PASS" : "FAIL") << '\n';
    return os.str();
}

void write_replicates_csv(std::ostream& out, const std::vector<ReplicateRecord>& records) {
    out << "replicate,covered_fraction,n_vacant,vacant_length\n";
    out << std::setprecision(17);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out << i << ',' << r.covered_fraction << ',' << r.n_vacant << ',' << r.vacant_length << '\n';
    }
}

void write_gaps_csv(std::ostream& out, const std::vector<ReplicateRecord>& records) {
    out << "gap_length\n";
    out << std::setprecision(17);
    for (const auto& r : records) {
        for (double g : r.gap_lengths) out << g << '\n';
    }
}

}  // namespace tabp
