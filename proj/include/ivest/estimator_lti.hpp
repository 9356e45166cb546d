#pragma once

#include <cstddef>
#include <optional>

#include "ivest/interval.hpp"
#include "ivest/monotonic.hpp"
#include "ivest/radius.hpp"
#include "ivest/rls.hpp"

namespace ivest {

struct IntervalEstimate {
    std::size_t t{0};
    Vector point;                          // RLS estimate theta(t)
    IntervalVector raw;                    // I(c(t), r(t))
    std::optional<IntervalVector> refined; // after the monotonic operator, when enabled
    bool inconsistent{false};
};

struct LtiEstimatorConfig {
    RlsConfig rls;
    IntervalVector theta_prior;
    RadiusMode radius_mode{RadiusMode::exact()};
    bool monotonic{false};
    std::size_t max_exact_horizon{kDefaultMaxExactHorizon};

    void validate() const;
};

// Interval estimator for a constant parameter vector. The center follows
//   c(t) = A(t) c(t-1) + q(t) (y(t) - c_v(t))
// and the radius bounds the RLS error through the transition matrices.
class LtiEstimator {
public:
    explicit LtiEstimator(const LtiEstimatorConfig& config);

    // v_bounds is the 1-dimensional box containing v(t).
    IntervalEstimate step(const Vector& x, double y, const IntervalVector& v_bounds);

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
