#pragma once

#include <cstddef>

#include "ivest/interval.hpp"

namespace ivest {

// Exponentially weighted recursive least squares, the point-valued reference
// identifier whose error the interval estimators bound.
struct RlsConfig {
    Vector theta0;   // prior guess
    Matrix P0;       // symmetric positive definite
    double lambda{}; // forgetting factor in (0, 1]

    std::size_t dim() const { return static_cast<std::size_t>(theta0.size()); }

    // Throws std::invalid_argument when the invariants do not hold.
    void validate() const;

    // lambda == 1 runs fine but the interval estimators' stability results
    // need lambda < 1.
    bool outside_estimator_theory() const { return lambda >= 1.0; }

    static RlsConfig isotropic(Vector theta0, double p0_scale, double lambda);
};

struct RlsState {
    std::size_t t{0};
    double lambda{};
    Vector theta;
    Matrix P;
    Vector last_q;        // q(t)
    Matrix last_A;        // I - q(t) x(t)^T
    double last_asymmetry{0.0}; // ||P - P^T||_max / ||P||_max before symmetrizing
};

RlsState rls_init(const RlsConfig& config);

// One update with regressor x(t) and output y(t). Throws on dimension
// mismatch or non-finite input.
RlsState rls_step(RlsState state, const Vector& x, double y);

// y - x^T theta(t-1)
double innovation(const RlsState& state, const Vector& x, double y);

} // namespace ivest
