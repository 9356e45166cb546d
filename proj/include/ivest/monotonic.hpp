#pragma once

#include <optional>

#include "ivest/interval.hpp"

namespace ivest {

// Running intersection: lower' = max(lower, xi.lower), upper' = min(upper, xi.upper).
Intersection monotonic_update(const IntervalVector& bounds, const IntervalVector& xi);

// Drift-aware variant: the previous box is first translated by the drift box
// [delta_lo, delta_hi], then intersected with xi.
Intersection drift_monotonic_update(const IntervalVector& bounds, const IntervalVector& drift,
                                    const IntervalVector& xi);

// Stateful wrapper that freezes at the last consistent box once an empty
// intersection is met and keeps reporting the inconsistency afterwards.
class MonotonicFilter {
public:
    explicit MonotonicFilter(IntervalVector initial) : bounds_(std::move(initial)) {}

    // drift absent: constant-parameter operator.
    const IntervalVector& update(const IntervalVector& xi, const std::optional<IntervalVector>& drift = std::nullopt);

    const IntervalVector& bounds() const { return bounds_; }
    bool inconsistent() const { return inconsistent_; }

private:
    IntervalVector bounds_;
    bool inconsistent_{false};
};

} // namespace ivest
