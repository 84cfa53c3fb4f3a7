#include "tabp/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tabp/analytics.hpp"
#include "tabp/classifier.hpp"
#include "tabp/coverage.hpp"
#include "tabp/monte_carlo.hpp"
#include "tabp/point_process.hpp"
#include "tabp/report.hpp"

namespace tabp::cli {

namespace {

struct Invocation {
    double lambda = 1.0;
    std::string dist = "pareto:alpha=1";
    std::string domain = "half";
    double window = 1000.0;
    double reps = 1000;
    std::uint64_t seed = 1;
    double burn_in = 0.0;
    std::vector<double> probes;
    std::vector<double> ladder;
    unsigned workers = 0;
    std::string csv_dir;
    std::string json_file;
    std::string format = "json";
    double threshold = 4.0;
    double epsilon = kDefaultBufferEpsilon;
    std::size_t replicate = 0;
    std::string replay;
    bool force_tail = false;
    double delta = 0.05;
    double horizon = 1e12;
    std::vector<double> lambda_grid;
    std::vector<double> alpha_grid;
};

ModelParams make_params(const Invocation& inv) {
    ModelParams p;
    p.lambda = inv.lambda;
    p.dist = parse_distribution(inv.dist);
    if (inv.domain == "half") {
        p.domain = Domain::HalfLine;
    } else if (inv.domain == "full") {
        p.domain = Domain::FullLine;
    } else {
        throw std::invalid_argument("unknown domain '" + inv.domain + "' (expected half or full)");
    }
    p.validate();
    return p;
}

McConfig make_config(const Invocation& inv) {
    McConfig cfg;
    cfg.params = make_params(inv);
    cfg.window = inv.window;
    if (!(inv.reps >= 1.0) || inv.reps != std::floor(inv.reps) || inv.reps > 1e12) {
        throw std::invalid_argument("--reps must be a positive integer, got " + format_double(inv.reps));
    }
    cfg.replicates = static_cast<std::size_t>(inv.reps);
    cfg.master_seed = inv.seed;
    cfg.burn_in = inv.burn_in;
    cfg.probes = inv.probes;
    cfg.ladder = inv.ladder;
    cfg.workers = inv.workers;
    cfg.threshold_se = inv.threshold;
    cfg.buffer_epsilon = inv.epsilon;
    cfg.validate();
    return cfg;
}

void add_model_flags(CLI::App* app, Invocation& inv) {
    app->add_option("--lambda", inv.lambda, "germ intensity per unit length")->capture_default_str();
    app->add_option("--dist", inv.dist, "grain law: constant:c=X | exponential:mean=X | pareto:alpha=X | "
                                        "table:path=FILE")
        ->capture_default_str();
    app->add_option("--domain", inv.domain, "half (half-line) or full (full line)")->capture_default_str();
}

void add_sim_flags(CLI::App* app, Invocation& inv) {
    app->add_option("--T", inv.window, "window length")->capture_default_str();
    app->add_option("--seed", inv.seed, "master seed")->capture_default_str();
    app->add_option("--epsilon", inv.epsilon, "full line: expected missed crossings from beyond the buffer")
        ->capture_default_str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path.string() + "'");
    f << text;
}

int do_simulate(const Invocation& inv, std::ostream& out) {
    Realization real;
    if (!inv.replay.empty()) {
        const ModelParams params = make_params(inv);
        std::ifstream in(inv.replay);
        if (!in) throw std::invalid_argument("cannot open '" + inv.replay + "'");
        real.germs = read_germs_csv(in);
        real.window = inv.window;
        real.domain = params.domain;
        if (!real.germs.empty() && real.germs.front().u < 0.0) real.left_buffer = -real.germs.front().u;
    } else {
        const ModelParams params = make_params(inv);
        RandomSource rng = RandomSource::for_replicate(inv.seed, inv.replicate);
        real = params.domain == Domain::HalfLine ? sample_halfline(params, inv.window, rng)
                                                 : sample_fullline(params, inv.window, rng, inv.epsilon);
    }
    const ComponentDecomposition dec = decompose(real);
    if (!inv.csv_dir.empty()) {
        std::filesystem::create_directories(inv.csv_dir);
        std::ostringstream germs;
        write_realization_csv(germs, real);
        write_file(std::filesystem::path(inv.csv_dir) / "realization.csv", germs.str());
        std::ostringstream comps;
        write_decomposition_csv(comps, dec);
        write_file(std::filesystem::path(inv.csv_dir) / "decomposition.csv", comps.str());
    }
    Json j = Json::parse(decomposition_summary_json(dec));
    j["schema"] = kSchemaVersion;
    j["germs"] = real.germs.size();
    j["left_buffer"] = real.left_buffer;
    j["covered_fraction"] = covered_fraction(dec, inv.burn_in);
    out << j.dump(2) << '\n';
    return kOk;
}

int do_classify(const Invocation& inv, std::ostream& out) {
    const ModelParams params = make_params(inv);
    ClassifierOptions opt;
    opt.force_tail_asymptotic = inv.force_tail;
    opt.delta = inv.delta;
    opt.horizon = inv.horizon;
    const RegimeVerdict v = classify(params, opt);
    out << verdict_json(params, v).dump(2) << '\n';
    return v.regime == Regime::Inconclusive ? kInconclusive : kOk;
}

int do_analytics(const Invocation& inv, std::ostream& out, bool window_given) {
    const ClosedForms cf(make_params(inv));
    std::vector<double> probes = inv.probes;
    if (probes.empty()) probes = {0.0, 0.5, 1.0, std::exp(1.0), std::exp(2.0), 10.0, 100.0};
    std::vector<double> windows;
    if (window_given) windows.push_back(inv.window);
    out << analytics_json(cf, probes, windows).dump(2) << '\n';
    return kOk;
}

int do_verify(const Invocation& inv, std::ostream& out) {
    const McConfig cfg = make_config(inv);
    const RunPlan plan = make_plan(cfg, classify(cfg.params));
    const auto records = run_replicates(cfg, plan);
    const McReport report = verify(cfg, plan, records);
    const std::string json = report_json(report).dump(2) + "\n";
    if (!inv.csv_dir.empty()) {
        std::filesystem::create_directories(inv.csv_dir);
        std::ostringstream reps;
        write_replicates_csv(reps, records);
        write_file(std::filesystem::path(inv.csv_dir) / "replicates.csv", reps.str());
        std::ostringstream gaps;
        write_gaps_csv(gaps, records);
        write_file(std::filesystem::path(inv.csv_dir) / "gap_length.csv", gaps.str());
    }
    if (!inv.json_file.empty()) write_file(inv.json_file, json);
    if (inv.format == "text" || !inv.json_file.empty()) {
        out << report_text(report);
    } else {
        out << json;
    }
    return report.passed() ? kOk : kVerificationFailed;
}

int do_scan(const Invocation& inv, std::ostream& out, std::ostream& err, bool lambda_mode) {
    const std::vector<double>& grid = lambda_mode ? inv.lambda_grid : inv.alpha_grid;
    if (grid.empty()) {
        err << "scan: empty grid; pass --lambda-grid or --alpha-grid\n";
        return kUsage;
    }
    out << "param,regime,E_Nv,cvf\n";
    for (double x : grid) {
        Invocation point = inv;
        if (lambda_mode) {
            point.lambda = x;
        } else {
            point.dist = "pareto:alpha=" + format_double(x);
        }
        const ClosedForms cf(make_params(point));
        const RegimeVerdict v = classify(cf.params());
        double env = std::numeric_limits<double>::quiet_NaN();
        if (v.integral.is_finite()) {
            env = cf.params().lambda * v.integral.value;
        } else if (v.integral.status == VacancyIntegral::Status::Infinite) {
            env = std::numeric_limits<double>::infinity();
        }
        out << format_double(x) << ',' << to_string(v.regime) << ',' << format_double(env) << ','
            << format_double(cf.covered_volume_fraction()) << '\n';
    }
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Totally asymmetric Boolean percolation: simulation, closed forms, regime classification"};
    app.require_subcommand(1);
    Invocation inv;

    auto* simulate = app.add_subcommand("simulate", "sample one realization and decompose it");
    add_model_flags(simulate, inv);
    add_sim_flags(simulate, inv);
    simulate->add_option("--replicate", inv.replicate, "replicate index of the derived stream")->capture_default_str();
    simulate->add_option("--burn-in", inv.burn_in, "covered fraction measured on [burn-in, T]");
    simulate->add_option("--csv", inv.csv_dir, "write realization.csv (u,rho) and decomposition.csv (kind,a,b)");
    simulate->add_option("--replay", inv.replay, "decompose germs from a u,rho CSV instead of sampling");

    auto* classify_cmd = app.add_subcommand("classify", "decide the regime of (lambda, dist)");
    add_model_flags(classify_cmd, inv);
    classify_cmd->add_flag("--force-tail-asymptotic", inv.force_tail, "tabulate built-in laws and use tail asymptotics");
    classify_cmd->add_option("--delta", inv.delta, "margin around the critical t^-1 decay")->capture_default_str();
    classify_cmd->add_option("--horizon", inv.horizon, "largest t examined")->capture_default_str();

    auto* analytics = app.add_subcommand("analytics", "print closed-form quantities as JSON");
    add_model_flags(analytics, inv);
    analytics->add_option("--probe", inv.probes, "points t for the vacancy probability")->delimiter(',');
    auto* analytics_window = analytics->add_option("--T", inv.window, "also report expected vacant length of [0,T]");

    auto* verify_cmd = app.add_subcommand("verify", "Monte Carlo check of every closed form");
    add_model_flags(verify_cmd, inv);
    add_sim_flags(verify_cmd, inv);
    verify_cmd->add_option("--reps", inv.reps, "replicates")->capture_default_str();
    verify_cmd->add_option("--burn-in", inv.burn_in, "covered fraction measured on [burn-in, T]");
    verify_cmd->add_option("--probe", inv.probes, "points t for vacancy estimates")->delimiter(',');
    verify_cmd->add_option("--ladder", inv.ladder, "nested windows for N_v growth")->delimiter(',');
    verify_cmd->add_option("--workers", inv.workers, "worker threads (0 = all cores)");
    verify_cmd->add_option("--csv", inv.csv_dir, "write replicates.csv and gap_length.csv");
    verify_cmd->add_option("--json", inv.json_file, "write the JSON report to a file (text table on stdout)");
    verify_cmd->add_option("--format", inv.format, "stdout format: json or text")
        ->check(CLI::IsMember({"json", "text"}))
        ->capture_default_str();
    verify_cmd->add_option("--threshold", inv.threshold, "pass within this many standard errors")
        ->capture_default_str();

    auto* scan = app.add_subcommand("scan", "sweep lambda or the Pareto exponent; CSV param,regime,E_Nv,cvf");
    add_model_flags(scan, inv);
    auto* lambda_grid = scan->add_option("--lambda-grid", inv.lambda_grid, "lambda values")->delimiter(',');
    auto* alpha_grid = scan->add_option("--alpha-grid", inv.alpha_grid, "Pareto alpha values")->delimiter(',');
    lambda_grid->excludes(alpha_grid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*simulate) return do_simulate(inv, out);
        if (*classify_cmd) return do_classify(inv, out);
        if (*analytics) return do_analytics(inv, out, analytics_window->count() > 0);
        if (*verify_cmd) return do_verify(inv, out);
        if (*scan) return do_scan(inv, out, err, lambda_grid->count() > 0);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace tabp::cli
