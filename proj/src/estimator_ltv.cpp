#include "ivest/estimator_ltv.hpp"

#include <cmath>
#include <stdexcept>

namespace ivest {

namespace {

const LtiEstimatorConfig& validated(const LtiEstimatorConfig& config)
{
    config.validate();
    return config;
}

} // namespace

LtvEstimator::LtvEstimator(const LtiEstimatorConfig& config)
    : config_(validated(config)),
      rls_(rls_init(config.rls)),
      center_(config.theta_prior.center()),
      radius_(config.theta_prior.radius(), config.theta_prior.size() + 1, config.radius_mode,
              config.max_exact_horizon)
{
    if (config_.monotonic) {
        monotonic_.emplace(config_.theta_prior);
    }
}

IntervalEstimate LtvEstimator::step(const Vector& x, double y, const IntervalVector& v_bounds,
                                    const DriftBounds& drift)
{
    const auto n = center_.size();
    if (v_bounds.size() != 1) {
        throw std::invalid_argument("LtvEstimator::step: noise bounds must be 1-dimensional");
    }
    if (drift.c_delta.size() != n || drift.r_delta.size() != n) {
        throw std::invalid_argument("LtvEstimator::step: drift bounds have the wrong dimension");
    }
    const IntervalVector drift_box = drift.box();
    const double c_v = v_bounds.center()[0];
    const double r_v = v_bounds.radius()[0];
    if (!std::isfinite(c_v) || !std::isfinite(r_v) || !drift.c_delta.allFinite() || !drift.r_delta.allFinite()) {
        throw std::invalid_argument("LtvEstimator::step: non-finite bounds");
    }

    rls_ = rls_step(std::move(rls_), x, y);
    const Vector& q = rls_.last_q;
    const Matrix& A = rls_.last_A;

    center_ = A * center_ + q * (y - c_v) + A * drift.c_delta;

    Matrix B(n, n + 1);
    B.col(0) = q;
    B.rightCols(n) = -A;
    Vector input_radius(n + 1);
    input_radius[0] = r_v;
    input_radius.tail(n) = drift.r_delta;
    const Vector& r = radius_.step(A, B, input_radius);

    IntervalEstimate est;
    est.t = rls_.t;
    est.point = rls_.theta;
    est.raw = IntervalVector::from_center_radius(center_, r);
    if (monotonic_) {
        est.refined = monotonic_->update(est.raw, drift_box);
        est.inconsistent = monotonic_->inconsistent();
    }
    return est;
}

} // namespace ivest
