#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ivest/csv.hpp"
#include "ivest/dataset.hpp"
#include "ivest/estimator_ltv.hpp"

namespace ivest {

// Slack used when auditing containment of the true parameter.
inline constexpr double kContainmentSlack = 1e-9;

// Runs the estimator over a whole dataset. Datasets carrying drift bounds go
// through LtvEstimator, the others through LtiEstimator.
std::vector<IntervalEstimate> estimate_dataset(const Dataset& data, const LtiEstimatorConfig& config);

// Estimator configuration implied by a simulation config for one mode.
LtiEstimatorConfig estimator_config(const SimConfig& config, const RadiusMode& mode);

struct RunAudit {
    std::size_t run{0};
    std::string mode;
    bool raw_contained{true};
    bool refined_contained{true};
    bool widths_nonincreasing{true}; // constant-parameter monotonic runs only
    bool inconsistent{false};
    std::size_t first_violation_t{0}; // 0: none

    bool ok() const { return raw_contained && refined_contained && widths_nonincreasing && !inconsistent; }
};

// Audits one estimate stream against the dataset's ground truth. When
// width_start is given, refined widths must be nonincreasing from that box on.
RunAudit audit_run(const Dataset& data, const std::vector<IntervalEstimate>& estimates,
                   const std::optional<IntervalVector>& width_start = std::nullopt);

struct ModeTrack {
    RadiusMode mode;
    std::vector<EstimateRow> mean_rows; // componentwise averages across runs, per t
    Vector mean_final_width;            // refined (or raw) width at t = N, averaged
};

struct ExperimentResult {
    SimConfig config;
    std::vector<ModeTrack> tracks;
    std::vector<Vector> mean_truth; // theta(t) averaged across runs, t = 1..N
    std::vector<RunAudit> audits;   // run-major, mode-minor

    bool all_ok() const;
};

// Independent replications with seeds seed + run. Runs may execute on
// several threads; reduction happens in run order so the output never
// depends on scheduling.
ExperimentResult run_experiment(const SimConfig& config);

struct SweepRow {
    double lambda{};
    RadiusMode mode;
    Vector mean_final_width;
    bool all_ok{true};
};

// Monotonic operator forced on; throws std::invalid_argument for lambda outside (0, 1).
std::vector<SweepRow> lambda_sweep(const SimConfig& config, const std::vector<double>& lambdas);

// Files: estimates_<mode>.csv, truth.csv, audit.csv, summary.txt.
void write_experiment(const ExperimentResult& result, const std::filesystem::path& dir);
std::string sweep_csv(const std::vector<SweepRow>& rows);
std::string audit_csv(const std::vector<RunAudit>& audits);

} // namespace ivest
