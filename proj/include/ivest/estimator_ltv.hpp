#pragma once

#include "ivest/estimator_lti.hpp"

namespace ivest {

// Box I(c_delta, r_delta) containing the parameter increment
// delta(t) = theta(t) - theta(t-1).
struct DriftBounds {
    Vector c_delta;
    Vector r_delta;

    static DriftBounds zero(Eigen::Index n) { return {Vector::Zero(n), Vector::Zero(n)}; }
    // Throws std::invalid_argument on a negative radius.
    IntervalVector box() const { return IntervalVector::from_center_radius(c_delta, r_delta); }
};

// Interval estimator for a slowly drifting parameter. The error obeys
//   e(t) = A(t) e(t-1) + B(t) [v(t); delta(t)],  B(t) = [q(t) | -A(t)],
// so each step contributes an n x (n+1) propagated block to the radius.
class LtvEstimator {
public:
    explicit LtvEstimator(const LtiEstimatorConfig& config);

    IntervalEstimate step(const Vector& x, double y, const IntervalVector& v_bounds, const DriftBounds& drift);

    const LtiEstimatorConfig& config() const { return config_; }
    const RlsState& rls() const { return rls_; }
    const Vector& center() const { return center_; }
    const Vector& radius() const { return radius_.radius(); }
    const RadiusPropagator& radius_propagator() const { return radius_; }
    const std::optional<MonotonicFilter>& monotonic() const { return monotonic_; }

private:
    LtiEstimatorConfig config_;
    RlsState rls_;
    Vector center_;
    RadiusPropagator radius_;
    std::optional<MonotonicFilter> monotonic_;
};

} // namespace ivest
