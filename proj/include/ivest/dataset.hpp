#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ivest/interval.hpp"
#include "ivest/radius.hpp"

namespace ivest {

// Monte Carlo experiment settings. Defaults reproduce the constant-parameter
// ARX study: theta = (-1.40, 0.75, 0.60, -0.10), v ~ U[-0.2, 0.2], N = 200.
struct SimConfig {
    std::size_t na{2};
    std::size_t nb{2};
    Vector theta_true;        // theta(0); defaults to the ARX parameters above
    Vector drift_radius;      // empty: constant parameter
    double drift_period{30.0};
    double noise_half_width{0.2};
    std::size_t horizon{200};
    std::size_t runs{100};
    std::uint64_t seed{0};
    double lambda{0.99};
    double p0_scale{1e3};
    double prior_radius{4.0};
    double prior_center{0.0};
    std::vector<RadiusMode> modes{RadiusMode::truncated(20), RadiusMode::truncated(50), RadiusMode::exact()};
    bool monotonic{false};
    std::size_t threads{0};   // 0: hardware concurrency
    std::size_t pe_window{0}; // 0: 2n

    SimConfig();

    std::size_t dim() const { return na + nb; }
    bool time_varying() const { return drift_radius.size() > 0; }
    std::size_t effective_pe_window() const { return pe_window == 0 ? 2 * dim() : pe_window; }

    // Throws std::invalid_argument.
    void validate() const;

    // Drift study: r_delta = (0.10, 0.05, 0.04, 0.01), lambda = 0.1, modes {5, N}, monotonic.
    static SimConfig drifting();
};

struct DataRecord {
    std::size_t t{0};
    double y{0.0};
    Vector x;
    double v_lo{0.0};
    double v_hi{0.0};
    double v_true{0.0};  // valid when Dataset::has_v_true
    Vector theta_true;   // empty unless Dataset::has_theta_true
    Vector delta_lo;     // empty unless Dataset::has_drift
    Vector delta_hi;
};

struct Dataset {
    Eigen::Index n{0};
    bool has_v_true{false};
    bool has_theta_true{false};
    bool has_drift{false};
    std::vector<DataRecord> records;

    std::vector<Vector> regressors() const;
    // Throws std::invalid_argument on inconsistent shapes, inverted bounds, or
    // ground truth outside its declared bounds.
    void validate() const;
};

// Thrown when the simulated output stops being finite.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(std::size_t t, const std::string& what) : std::runtime_error(what), t_(t) {}
    std::size_t t() const { return t_; }

private:
    std::size_t t_;
};

// ARX data y(t) = x(t)^T theta + v(t), x(t) = [-y(t-1..t-na), u(t-1..t-nb)],
// zero initial conditions. Per step t = 1..N the generator draws v(t) then u(t).
Dataset generate_lti(const SimConfig& config, std::uint64_t seed);

// As generate_lti with theta(t) = theta(t-1) + r_delta sin(2 pi t / period);
// drift bounds are the constant box [-r_delta, r_delta].
Dataset generate_ltv(const SimConfig& config, std::uint64_t seed);

// Dispatches on config.time_varying().
Dataset generate(const SimConfig& config, std::uint64_t seed);

} // namespace ivest
