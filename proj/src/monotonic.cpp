#include "ivest/monotonic.hpp"

namespace ivest {

Intersection monotonic_update(const IntervalVector& bounds, const IntervalVector& xi)
{
    return intersect(bounds, xi);
}

Intersection drift_monotonic_update(const IntervalVector& bounds, const IntervalVector& drift,
                                    const IntervalVector& xi)
{
    return intersect(translate(bounds, drift), xi);
}

const IntervalVector& MonotonicFilter::update(const IntervalVector& xi, const std::optional<IntervalVector>& drift)
{
    if (inconsistent_) {
        return bounds_;
    }
    auto next = drift ? drift_monotonic_update(bounds_, *drift, xi) : monotonic_update(bounds_, xi);
    if (next.consistent()) {
        bounds_ = std::move(*next.box);
    } else {
        inconsistent_ = true;
    }
    return bounds_;
}

} // namespace ivest
