#include "ivest/dataset.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ivest/rng.hpp"

namespace ivest {

SimConfig::SimConfig() : theta_true((Vector(4) << -1.40, 0.75, 0.60, -0.10).finished()) {}

void SimConfig::validate() const
{
    if (dim() == 0) {
        throw std::invalid_argument("SimConfig: model orders give an empty regressor");
    }
    if (static_cast<std::size_t>(theta_true.size()) != dim()) {
        throw std::invalid_argument("SimConfig: theta_true has " + std::to_string(theta_true.size()) +
                                    " entries, expected na+nb=" + std::to_string(dim()));
    }
    if (time_varying() && drift_radius.size() != theta_true.size()) {
        throw std::invalid_argument("SimConfig: drift radius must have one entry per parameter");
    }
    if (time_varying() && (drift_radius.array() < 0.0).any()) {
        throw std::invalid_argument("SimConfig: drift radius must be nonnegative");
    }
    if (!(drift_period > 0.0)) {
        throw std::invalid_argument("SimConfig: drift period must be positive");
    }
    if (horizon < 1) {
        throw std::invalid_argument("SimConfig: horizon must be >= 1");
    }
    if (runs < 1) {
        throw std::invalid_argument("SimConfig: runs must be >= 1");
    }
    if (!(noise_half_width >= 0.0)) {
        throw std::invalid_argument("SimConfig: noise half-width must be >= 0");
    }
    if (!(prior_radius > 0.0)) {
        throw std::invalid_argument("SimConfig: prior radius must be > 0");
    }
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("SimConfig: forgetting factor must lie in (0, 1]");
    }
    if (!(p0_scale > 0.0)) {
        throw std::invalid_argument("SimConfig: P0 scale must be > 0");
    }
    if (modes.empty()) {
        throw std::invalid_argument("SimConfig: no estimator modes selected");
    }
}

SimConfig SimConfig::drifting()
{
    SimConfig c;
    c.drift_radius = (Vector(4) << 0.10, 0.05, 0.04, 0.01).finished();
    c.lambda = 0.1;
    c.modes = {RadiusMode::truncated(5), RadiusMode::exact()};
    c.monotonic = true;
    return c;
}

std::vector<Vector> Dataset::regressors() const
{
    std::vector<Vector> xs;
    xs.reserve(records.size());
    for (const auto& r : records) {
        xs.push_back(r.x);
    }
    return xs;
}

void Dataset::validate() const
{
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const std::string where = " (record " + std::to_string(i + 1) + ", t=" + std::to_string(r.t) + ")";
        if (r.x.size() != n) {
            throw std::invalid_argument("dataset: regressor dimension mismatch" + where);
        }
        if (!(r.v_lo <= r.v_hi)) {
            throw std::invalid_argument("dataset: v_lo > v_hi" + where);
        }
        if (has_v_true && !(r.v_lo <= r.v_true && r.v_true <= r.v_hi)) {
            throw std::invalid_argument("dataset: noise outside its bounds" + where);
        }
        if (has_theta_true && r.theta_true.size() != n) {
            throw std::invalid_argument("dataset: theta_true dimension mismatch" + where);
        }
        if (has_drift) {
            if (r.delta_lo.size() != n || r.delta_hi.size() != n) {
                throw std::invalid_argument("dataset: drift bound dimension mismatch" + where);
            }
            if ((r.delta_lo.array() > r.delta_hi.array()).any()) {
                throw std::invalid_argument("dataset: delta_lo > delta_hi" + where);
            }
        }
    }
}

namespace {

Dataset simulate_arx(const SimConfig& config, std::uint64_t seed, bool drifting)
{
    config.validate();
    const auto na = config.na;
    const auto nb = config.nb;
    const auto n = static_cast<Eigen::Index>(config.dim());
    const auto N = config.horizon;
    const double a = config.noise_half_width;

    Dataset data;
    data.n = n;
    data.has_v_true = true;
    data.has_theta_true = true;
    data.has_drift = drifting;
    data.records.reserve(N);

    const Vector r_delta = drifting ? config.drift_radius : Vector::Zero(n);

    // y_hist[k] = y(t-1-k), u_hist[k] = u(t-1-k); zero before t = 1.
    std::vector<double> y_hist(na, 0.0);
    std::vector<double> u_hist(nb, 0.0);
    Vector theta = config.theta_true;
    Rng rng(seed);

    for (std::size_t t = 1; t <= N; ++t) {
        const double v = rng.uniform(-a, a);
        const double u = rng.gaussian();

        if (drifting) {
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(t) / config.drift_period;
            theta += r_delta * std::sin(phase);
        }

        DataRecord rec;
        rec.t = t;
        rec.x.resize(n);
        for (std::size_t k = 0; k < na; ++k) {
            rec.x[static_cast<Eigen::Index>(k)] = -y_hist[k];
        }
        for (std::size_t k = 0; k < nb; ++k) {
            rec.x[static_cast<Eigen::Index>(na + k)] = u_hist[k];
        }
        rec.v_true = v;
        rec.v_lo = -a;
        rec.v_hi = a;
        rec.y = rec.x.dot(theta) + v;
        rec.theta_true = theta;
        if (drifting) {
            rec.delta_lo = -r_delta;
            rec.delta_hi = r_delta;
        }
        if (!std::isfinite(rec.y)) {
            throw DivergenceError(t, "simulation diverged: non-finite output at t=" + std::to_string(t));
        }

        if (na > 0) {
            y_hist.pop_back();
            y_hist.insert(y_hist.begin(), rec.y);
        }
        if (nb > 0) {
            u_hist.pop_back();
            u_hist.insert(u_hist.begin(), u);
        }
        data.records.push_back(std::move(rec));
    }
    return data;
}

} // namespace

Dataset generate_lti(const SimConfig& config, std::uint64_t seed)
{
    return simulate_arx(config, seed, false);
}

Dataset generate_ltv(const SimConfig& config, std::uint64_t seed)
{
    if (!config.time_varying()) {
        throw std::invalid_argument("generate_ltv: no drift radius configured");
    }
    return simulate_arx(config, seed, true);
}

Dataset generate(const SimConfig& config, std::uint64_t seed)
{
    return config.time_varying() ? generate_ltv(config, seed) : generate_lti(config, seed);
}

} // namespace ivest
