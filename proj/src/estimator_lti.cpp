#include "ivest/estimator_lti.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ivest {

void LtiEstimatorConfig::validate() const
{
    rls.validate();
    if (theta_prior.size() != rls.theta0.size()) {
        throw std::invalid_argument("LtiEstimatorConfig: prior box has dimension " +
                                    std::to_string(theta_prior.size()) + ", expected " +
                                    std::to_string(rls.theta0.size()));
    }
    if (!theta_prior.lower().allFinite() || !theta_prior.upper().allFinite()) {
        throw std::invalid_argument("LtiEstimatorConfig: prior box must be bounded");
    }
    if (radius_mode.kind == RadiusKind::Truncated && radius_mode.m < 1) {
        throw std::invalid_argument("LtiEstimatorConfig: truncation horizon must be >= 1");
    }
}

namespace {

const LtiEstimatorConfig& validated(const LtiEstimatorConfig& config)
{
    config.validate();
    return config;
}

} // namespace

LtiEstimator::LtiEstimator(const LtiEstimatorConfig& config)
    : config_(validated(config)),
      rls_(rls_init(config.rls)),
      center_(config.theta_prior.center()),
      radius_(config.theta_prior.radius(), 1, config.radius_mode, config.max_exact_horizon)
{
    if (config_.monotonic) {
        monotonic_.emplace(config_.theta_prior);
    }
}

IntervalEstimate LtiEstimator::step(const Vector& x, double y, const IntervalVector& v_bounds)
{
    if (v_bounds.size() != 1) {
        throw std::invalid_argument("LtiEstimator::step: noise bounds must be 1-dimensional");
    }
    const double c_v = v_bounds.center()[0];
    const double r_v = v_bounds.radius()[0];
    if (!std::isfinite(c_v) || !std::isfinite(r_v)) {
        throw std::invalid_argument("LtiEstimator::step: non-finite noise bounds");
    }

    rls_ = rls_step(std::move(rls_), x, y);
    const Vector& q = rls_.last_q;
    const Matrix& A = rls_.last_A;

    center_ = A * center_ + q * (y - c_v);
    const Vector& r = radius_.step(A, q, Vector::Constant(1, r_v));

    IntervalEstimate est;
    est.t = rls_.t;
    est.point = rls_.theta;
    est.raw = IntervalVector::from_center_radius(center_, r);
    if (monotonic_) {
        est.refined = monotonic_->update(est.raw);
        est.inconsistent = monotonic_->inconsistent();
    }
    return est;
}

} // namespace ivest
