#include "ivest/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ivest {

std::vector<IntervalEstimate> estimate_dataset(const Dataset& data, const LtiEstimatorConfig& config)
{
    data.validate();
    if (data.n != config.theta_prior.size()) {
        throw std::invalid_argument("estimate_dataset: dataset has n=" + std::to_string(data.n) +
                                    " but the estimator expects n=" + std::to_string(config.theta_prior.size()));
    }
    std::vector<IntervalEstimate> out;
    out.reserve(data.records.size());

    if (data.has_drift) {
        LtvEstimator est(config);
        for (const auto& r : data.records) {
            const DriftBounds drift{(r.delta_hi + r.delta_lo) / 2.0, (r.delta_hi - r.delta_lo) / 2.0};
            out.push_back(est.step(r.x, r.y, IntervalVector::scalar(r.v_lo, r.v_hi), drift));
        }
    } else {
        LtiEstimator est(config);
        for (const auto& r : data.records) {
            out.push_back(est.step(r.x, r.y, IntervalVector::scalar(r.v_lo, r.v_hi)));
        }
    }
    return out;
}

LtiEstimatorConfig estimator_config(const SimConfig& config, const RadiusMode& mode)
{
    const auto n = static_cast<Eigen::Index>(config.dim());
    LtiEstimatorConfig est;
    est.rls = RlsConfig::isotropic(Vector::Constant(n, config.prior_center), config.p0_scale, config.lambda);
    est.theta_prior = IntervalVector::from_center_radius(Vector::Constant(n, config.prior_center),
                                                         Vector::Constant(n, config.prior_radius));
    est.radius_mode = mode;
    est.monotonic = config.monotonic;
    return est;
}

RunAudit audit_run(const Dataset& data, const std::vector<IntervalEstimate>& estimates,
                   const std::optional<IntervalVector>& width_start)
{
    RunAudit audit;
    auto flag = [&audit](bool& field, std::size_t t) {
        if (field) {
            field = false;
            if (audit.first_violation_t == 0) {
                audit.first_violation_t = t;
            }
        }
    };

    std::optional<Vector> previous_width;
    if (width_start) {
        previous_width = width_start->width();
    }
    for (std::size_t i = 0; i < estimates.size(); ++i) {
        const auto& est = estimates[i];
        if (data.has_theta_true) {
            const Vector& truth = data.records[i].theta_true;
            if (!contains(est.raw, truth, kContainmentSlack)) {
                flag(audit.raw_contained, est.t);
            }
            if (est.refined && !contains(*est.refined, truth, kContainmentSlack)) {
                flag(audit.refined_contained, est.t);
            }
        }
        if (est.inconsistent) {
            audit.inconsistent = true;
        }
        if (width_start && est.refined) {
            Vector width = est.refined->width();
            if (previous_width && (width.array() > previous_width->array()).any()) {
                flag(audit.widths_nonincreasing, est.t);
            }
            previous_width = std::move(width);
        }
    }
    return audit;
}

bool ExperimentResult::all_ok() const
{
    return std::all_of(audits.begin(), audits.end(), [](const RunAudit& a) { return a.ok(); });
}

namespace {

struct RunOutput {
    std::vector<std::vector<EstimateRow>> rows; // per mode
    std::vector<RunAudit> audits;               // per mode
    std::vector<Vector> truth;
};

RunOutput run_once(const SimConfig& config, std::size_t run, const IntervalVector& prior)
{
    const Dataset data = generate(config, config.seed + run);
    RunOutput out;
    for (const auto& r : data.records) {
        out.truth.push_back(r.theta_true);
    }
    const bool check_widths = config.monotonic && !config.time_varying();
    for (const auto& mode : config.modes) {
        const auto est_config = estimator_config(config, mode);
        const auto estimates = estimate_dataset(data, est_config);

        std::vector<EstimateRow> rows;
        rows.reserve(estimates.size());
        for (const auto& e : estimates) {
            rows.push_back(EstimateRow::from(e));
        }
        RunAudit audit = audit_run(data, estimates, check_widths ? std::optional(prior) : std::nullopt);
        audit.run = run;
        audit.mode = mode.label();
        out.rows.push_back(std::move(rows));
        out.audits.push_back(std::move(audit));
    }
    return out;
}

void accumulate(EstimateRow& sum, const EstimateRow& row)
{
    sum.theta_hat += row.theta_hat;
    sum.center += row.center;
    sum.radius += row.radius;
    sum.lo += row.lo;
    sum.hi += row.hi;
    if (sum.mono_lo.size() > 0) {
        sum.mono_lo += row.mono_lo;
        sum.mono_hi += row.mono_hi;
    }
    sum.inconsistent = std::max(sum.inconsistent, row.inconsistent);
}

void scale(EstimateRow& row, double factor)
{
    row.theta_hat *= factor;
    row.center *= factor;
    row.radius *= factor;
    row.lo *= factor;
    row.hi *= factor;
    row.mono_lo *= factor;
    row.mono_hi *= factor;
}

std::size_t worker_count(const SimConfig& config)
{
    std::size_t threads = config.threads;
    if (threads == 0) {
        threads = std::max(1u, std::thread::hardware_concurrency());
    }
    return std::min(threads, config.runs);
}

} // namespace

ExperimentResult run_experiment(const SimConfig& config)
{
    config.validate();
    const auto n = static_cast<Eigen::Index>(config.dim());
    const IntervalVector prior = IntervalVector::from_center_radius(Vector::Constant(n, config.prior_center),
                                                                    Vector::Constant(n, config.prior_radius));

    std::vector<RunOutput> outputs(config.runs);
    std::vector<std::exception_ptr> errors(config.runs);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t run = next++; run < config.runs; run = next++) {
            try {
                outputs[run] = run_once(config, run, prior);
            } catch (...) {
                errors[run] = std::current_exception();
            }
        }
    };
    const std::size_t threads = worker_count(config);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < threads; ++i) {
            pool.emplace_back(worker);
        }
    }
    for (std::size_t run = 0; run < config.runs; ++run) {
        if (errors[run]) {
            try {
                std::rethrow_exception(errors[run]);
            } catch (const std::exception& e) {
                throw std::runtime_error("run " + std::to_string(run) + " (seed " +
                                         std::to_string(config.seed + run) + "): " + e.what());
            }
        }
    }

    ExperimentResult result;
    result.config = config;
    const double inv_runs = 1.0 / static_cast<double>(config.runs);

    for (std::size_t m = 0; m < config.modes.size(); ++m) {
        ModeTrack track;
        track.mode = config.modes[m];
        track.mean_rows = outputs[0].rows[m];
        for (std::size_t run = 1; run < config.runs; ++run) {
            for (std::size_t i = 0; i < track.mean_rows.size(); ++i) {
                accumulate(track.mean_rows[i], outputs[run].rows[m][i]);
            }
        }
        for (auto& row : track.mean_rows) {
            scale(row, inv_runs);
        }
        const auto& last = track.mean_rows.back();
        track.mean_final_width = last.mono_lo.size() > 0 ? Vector(last.mono_hi - last.mono_lo) : Vector(last.hi - last.lo);
        result.tracks.push_back(std::move(track));
    }

    result.mean_truth = outputs[0].truth;
    for (std::size_t run = 1; run < config.runs; ++run) {
        for (std::size_t i = 0; i < result.mean_truth.size(); ++i) {
            result.mean_truth[i] += outputs[run].truth[i];
        }
    }
    for (auto& v : result.mean_truth) {
        v *= inv_runs;
    }

    for (auto& out : outputs) {
        for (auto& a : out.audits) {
            result.audits.push_back(std::move(a));
        }
    }
    return result;
}

std::vector<SweepRow> lambda_sweep(const SimConfig& config, const std::vector<double>& lambdas)
{
    for (double lambda : lambdas) {
        if (!(lambda > 0.0 && lambda < 1.0)) {
            throw std::invalid_argument("lambda_sweep: forgetting factor " + format_real(lambda) +
                                        " is outside (0, 1)");
        }
    }
    std::vector<SweepRow> rows;
    for (double lambda : lambdas) {
        SimConfig c = config;
        c.lambda = lambda;
        c.monotonic = true;
        const auto result = run_experiment(c);
        for (const auto& track : result.tracks) {
            SweepRow row;
            row.lambda = lambda;
            row.mode = track.mode;
            row.mean_final_width = track.mean_final_width;
            row.all_ok = std::all_of(result.audits.begin(), result.audits.end(), [&](const RunAudit& a) {
                return a.mode != track.mode.label() || a.ok();
            });
            rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::string audit_csv(const std::vector<RunAudit>& audits)
{
    std::ostringstream out;
    out << "run,mode,raw_contained,refined_contained,widths_nonincreasing,inconsistent,first_violation_t\n";
    for (const auto& a : audits) {
        out << a.run << ',' << a.mode << ',' << int(a.raw_contained) << ',' << int(a.refined_contained) << ','
            << int(a.widths_nonincreasing) << ',' << int(a.inconsistent) << ',' << a.first_violation_t << '\n';
    }
    return out.str();
}

std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    out << "lambda,mode";
    const auto n = rows.empty() ? 0 : rows.front().mean_final_width.size();
    for (Eigen::Index i = 1; i <= n; ++i) {
        out << ",width_" << i;
    }
    out << ",all_ok\n";
    for (const auto& r : rows) {
        out << format_real(r.lambda) << ',' << r.mode.label();
        for (Eigen::Index i = 0; i < r.mean_final_width.size(); ++i) {
            out << ',' << format_real(r.mean_final_width[i]);
        }
        out << ',' << int(r.all_ok) << '\n';
    }
    return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    f << content;
    if (!f) {
        throw std::runtime_error("failed writing " + path.string());
    }
}

} // namespace

void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    for (const auto& track : result.tracks) {
        std::ostringstream out;
        write_estimates_csv(out, track.mean_rows);
        write_file(dir / ("estimates_" + track.mode.label() + ".csv"), out.str());
    }

    {
        std::ostringstream out;
        out << 't';
        const auto n = result.mean_truth.empty() ? 0 : result.mean_truth.front().size();
        for (Eigen::Index i = 1; i <= n; ++i) {
            out << ",theta_true_" << i;
        }
        out << '\n';
        for (std::size_t t = 0; t < result.mean_truth.size(); ++t) {
            out << t + 1;
            for (Eigen::Index i = 0; i < n; ++i) {
                out << ',' << format_real(result.mean_truth[t][i]);
            }
            out << '\n';
        }
        write_file(dir / "truth.csv", out.str());
    }

    write_file(dir / "audit.csv", audit_csv(result.audits));

    const auto& c = result.config;
    std::ostringstream summary;
    summary << "kind=" << (c.time_varying() ? "ltv" : "lti") << '\n'
            << "runs=" << c.runs << '\n'
            << "horizon=" << c.horizon << '\n'
            << "seed=" << c.seed << '\n'
            << "lambda=" << format_real(c.lambda) << '\n'
            << "noise_half_width=" << format_real(c.noise_half_width) << '\n'
            << "monotonic=" << int(c.monotonic) << '\n';
    std::size_t failed = 0;
    for (const auto& a : result.audits) {
        failed += a.ok() ? 0 : 1;
    }
    for (const auto& track : result.tracks) {
        summary << "final_width_" << track.mode.label() << '=';
        for (Eigen::Index i = 0; i < track.mean_final_width.size(); ++i) {
            summary << (i ? " " : "") << format_real(track.mean_final_width[i]);
        }
        summary << '\n';
    }
    summary << "audits_failed=" << failed << '\n' << "all_ok=" << int(failed == 0) << '\n';
    write_file(dir / "summary.txt", summary.str());
}

} // namespace ivest
