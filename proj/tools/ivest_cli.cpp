// Command-line front end: simulation studies, estimation from CSV, PE
// diagnostics and forgetting-factor sweeps.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ivest/csv.hpp"
#include "ivest/dataset.hpp"
#include "ivest/experiment.hpp"
#include "ivest/pe_analysis.hpp"

namespace fs = std::filesystem;
using namespace ivest;

namespace {

constexpr int kExitAuditFailed = 1;
constexpr int kExitError = 2;

struct Options {
    std::uint64_t seed{0};
    std::string out;
    std::string input;
    std::optional<std::size_t> na, nb, horizon, runs, threads, pe_window;
    std::optional<double> noise, lambda, p0_scale, prior_radius, prior_center, drift_period;
    std::vector<double> theta, drift_radius, lambdas{0.3, 0.6, 0.9, 0.99};
    std::vector<std::string> modes;
    std::optional<bool> monotonic;
    bool dump_datasets{false};
};

Vector to_vector(const std::vector<double>& v)
{
    return Eigen::Map<const Vector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

SimConfig make_config(const Options& o, bool drifting)
{
    SimConfig c = drifting ? SimConfig::drifting() : SimConfig();
    c.seed = o.seed;
    if (o.na) c.na = *o.na;
    if (o.nb) c.nb = *o.nb;
    if (o.horizon) c.horizon = *o.horizon;
    if (o.runs) c.runs = *o.runs;
    if (o.threads) c.threads = *o.threads;
    if (o.pe_window) c.pe_window = *o.pe_window;
    if (o.noise) c.noise_half_width = *o.noise;
    if (o.lambda) c.lambda = *o.lambda;
    if (o.p0_scale) c.p0_scale = *o.p0_scale;
    if (o.prior_radius) c.prior_radius = *o.prior_radius;
    if (o.prior_center) c.prior_center = *o.prior_center;
    if (o.drift_period) c.drift_period = *o.drift_period;
    if (o.monotonic) c.monotonic = *o.monotonic;
    if (!o.theta.empty()) c.theta_true = to_vector(o.theta);
    if (!o.drift_radius.empty()) c.drift_radius = to_vector(o.drift_radius);
    if (!o.modes.empty()) {
        c.modes.clear();
        for (const auto& m : o.modes) {
            c.modes.push_back(RadiusMode::parse(m));
        }
    }
    c.validate();
    return c;
}

void warn_lambda(double lambda)
{
    if (lambda >= 1.0) {
        std::cerr << "warning: lambda = 1 lies outside the interval estimator theory; "
                     "boundedness of the radius is not guaranteed\n";
    }
}

void write_text(const fs::path& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    f << text;
    if (!f) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

Dataset load_dataset(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    try {
        return read_dataset_csv(in);
    } catch (const CsvError& e) {
        throw CsvError(path + ": " + e.what());
    }
}

int cmd_simulate(const Options& o, bool drifting)
{
    const SimConfig config = make_config(o, drifting);
    warn_lambda(config.lambda);
    const fs::path dir(o.out);
    fs::create_directories(dir);

    const auto result = run_experiment(config);
    write_experiment(result, dir);
    if (o.dump_datasets) {
        fs::create_directories(dir / "datasets");
        for (std::size_t run = 0; run < config.runs; ++run) {
            std::ostringstream csv;
            write_dataset_csv(csv, generate(config, config.seed + run));
            write_text(dir / "datasets" / ("run_" + std::to_string(run) + ".csv"), csv.str());
        }
    }
    std::cout << "wrote " << result.tracks.size() << " estimate streams to " << dir.string() << '\n';
    if (!result.all_ok()) {
        std::cerr << "containment audit failed, see " << (dir / "audit.csv").string() << '\n';
        return kExitAuditFailed;
    }
    return 0;
}

int cmd_estimate(const Options& o)
{
    if (o.input.empty()) {
        throw std::invalid_argument("estimate: --input is required");
    }
    const Dataset data = load_dataset(o.input);
    SimConfig base;
    const double lambda = o.lambda.value_or(data.has_drift ? 0.1 : base.lambda);
    warn_lambda(lambda);
    const auto n = data.n;

    const fs::path dir(o.out);
    fs::create_directories(dir);
    std::vector<std::string> modes = o.modes.empty() ? std::vector<std::string>{"exact"} : o.modes;
    std::vector<RunAudit> audits;
    for (const auto& label : modes) {
        LtiEstimatorConfig config;
        const Vector center = Vector::Constant(n, o.prior_center.value_or(base.prior_center));
        config.rls = RlsConfig::isotropic(center, o.p0_scale.value_or(base.p0_scale), lambda);
        config.theta_prior =
            IntervalVector::from_center_radius(center, Vector::Constant(n, o.prior_radius.value_or(base.prior_radius)));
        config.radius_mode = RadiusMode::parse(label);
        config.monotonic = o.monotonic.value_or(false);

        const auto estimates = estimate_dataset(data, config);
        std::vector<EstimateRow> rows;
        rows.reserve(estimates.size());
        for (const auto& e : estimates) {
            rows.push_back(EstimateRow::from(e));
        }
        std::ostringstream csv;
        write_estimates_csv(csv, rows);
        write_text(dir / ("estimates_" + config.radius_mode.label() + ".csv"), csv.str());

        if (data.has_theta_true) {
            const bool widths = config.monotonic && !data.has_drift;
            auto audit = audit_run(data, estimates, widths ? std::optional(config.theta_prior) : std::nullopt);
            audit.mode = config.radius_mode.label();
            audits.push_back(audit);
        }
    }
    if (audits.empty()) {
        return 0;
    }
    write_text(dir / "audit.csv", audit_csv(audits));
    bool ok = true;
    for (const auto& a : audits) {
        std::cout << "mode " << a.mode << ": " << (a.ok() ? "contained" : "VIOLATED") << '\n';
        ok = ok && a.ok();
    }
    return ok ? 0 : kExitAuditFailed;
}

int cmd_analyze_pe(const Options& o)
{
    SimConfig config = make_config(o, false);
    Dataset data;
    double eta_v = config.noise_half_width;
    if (!o.input.empty()) {
        data = load_dataset(o.input);
        eta_v = 0.0;
        for (const auto& r : data.records) {
            eta_v = std::max({eta_v, std::abs(r.v_lo), std::abs(r.v_hi)});
        }
        if (!o.pe_window) {
            config.pe_window = 2 * static_cast<std::size_t>(data.n);
        }
    } else {
        data = generate(config, config.seed);
    }
    warn_lambda(config.lambda);
    const auto n = data.n;
    const Matrix P0 = config.p0_scale * Matrix::Identity(n, n);
    const auto xs = data.regressors();
    const auto report = analyze_pe(xs, config.effective_pe_window(), config.lambda, P0, eta_v);

    const fs::path dir(o.out);
    fs::create_directories(dir);
    write_text(dir / "pe_report.txt", report.to_key_value());
    write_text(dir / "pe_report.csv", report.to_csv());
    std::cout << report.to_key_value();
    return 0;
}

int cmd_sweep(const Options& o)
{
    const SimConfig config = make_config(o, false);
    const auto rows = lambda_sweep(config, o.lambdas);
    const fs::path dir(o.out);
    fs::create_directories(dir);
    write_text(dir / "sweep.csv", sweep_csv(rows));
    bool ok = true;
    for (const auto& r : rows) {
        ok = ok && r.all_ok;
    }
    std::cout << "wrote " << rows.size() << " sweep rows to " << (dir / "sweep.csv").string() << '\n';
    return ok ? 0 : kExitAuditFailed;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Guaranteed interval estimation of ARX parameters around recursive least squares"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

    Options o;
    app.add_option("--seed", o.seed, "Base seed; run k uses seed + k")->required();
    app.add_option("--out", o.out, "Output directory")->required();
    app.add_option("--input", o.input, "Dataset CSV (estimate, analyze-pe)");
    app.add_option("--na", o.na, "Output lags in the regressor");
    app.add_option("--nb", o.nb, "Input lags in the regressor");
    app.add_option("--horizon,-N", o.horizon, "Samples per run");
    app.add_option("--runs", o.runs, "Monte Carlo replications");
    app.add_option("--threads", o.threads, "Worker threads, 0 for all cores");
    app.add_option("--pe-window", o.pe_window, "PE window length T, 0 for 2n");
    app.add_option("--noise", o.noise, "Noise half-width a");
    app.add_option("--lambda", o.lambda, "Forgetting factor");
    app.add_option("--p0-scale", o.p0_scale, "P0 = scale * I");
    app.add_option("--prior-radius", o.prior_radius, "Prior box radius");
    app.add_option("--prior-center", o.prior_center, "Prior box center (all components)");
    app.add_option("--theta", o.theta, "True parameter theta(0)")->delimiter(',');
    app.add_option("--drift-radius", o.drift_radius, "Drift radius r_delta")->delimiter(',');
    app.add_option("--drift-period", o.drift_period, "Drift sinusoid period");
    app.add_option("--modes", o.modes, "Radius modes, e.g. m20,m50,exact")->delimiter(',');
    app.add_option("--lambdas", o.lambdas, "Forgetting factors for sweep-lambda")->delimiter(',');
    app.add_flag("--monotonic,!--no-monotonic", o.monotonic, "Monotonic intersection of successive boxes");
    app.add_flag("--dump-datasets", o.dump_datasets, "Write every simulated dataset as CSV");

    auto* lti = app.add_subcommand("simulate-lti", "Monte Carlo study with a constant parameter");
    auto* ltv = app.add_subcommand("simulate-ltv", "Monte Carlo study with a drifting parameter");
    auto* est = app.add_subcommand("estimate", "Run the estimator on a dataset CSV");
    auto* pe = app.add_subcommand("analyze-pe", "Excitation and stability diagnostics");
    auto* sweep = app.add_subcommand("sweep-lambda", "Final widths versus forgetting factor");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*lti) return cmd_simulate(o, false);
        if (*ltv) return cmd_simulate(o, true);
        if (*est) return cmd_estimate(o);
        if (*pe) return cmd_analyze_pe(o);
        if (*sweep) return cmd_sweep(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
