#include "ivest/rls.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ivest {

void RlsConfig::validate() const
{
    const auto n = theta0.size();
    if (n == 0) {
        throw std::invalid_argument("RlsConfig: empty parameter vector");
    }
    if (!(lambda > 0.0 && lambda <= 1.0)) {
        throw std::invalid_argument("RlsConfig: forgetting factor must lie in (0, 1], got " +
                                    std::to_string(lambda));
    }
    if (P0.rows() != n || P0.cols() != n) {
        throw std::invalid_argument("RlsConfig: P0 must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!P0.allFinite() || !theta0.allFinite()) {
        throw std::invalid_argument("RlsConfig: non-finite prior");
    }
    const double scale = P0.cwiseAbs().maxCoeff();
    if ((P0 - P0.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("RlsConfig: P0 is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(P0, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues();
    if (!(ev.minCoeff() > 1e-12 * ev.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("RlsConfig: P0 is not positive definite");
    }
}

RlsConfig RlsConfig::isotropic(Vector theta0, double p0_scale, double lambda)
{
    const auto n = theta0.size();
    return RlsConfig{std::move(theta0), p0_scale * Matrix::Identity(n, n), lambda};
}

RlsState rls_init(const RlsConfig& config)
{
    config.validate();
    const auto n = config.theta0.size();
    RlsState s;
    s.t = 0;
    s.lambda = config.lambda;
    s.theta = config.theta0;
    s.P = config.P0;
    s.last_q = Vector::Zero(n);
    s.last_A = Matrix::Identity(n, n);
    return s;
}

double innovation(const RlsState& state, const Vector& x, double y)
{
    if (x.size() != state.theta.size()) {
        throw std::invalid_argument("innovation: regressor has dimension " + std::to_string(x.size()) +
                                    ", expected " + std::to_string(state.theta.size()));
    }
    return y - x.dot(state.theta);
}

RlsState rls_step(RlsState state, const Vector& x, double y)
{
    const auto n = state.theta.size();
    if (x.size() != n) {
        throw std::invalid_argument("rls_step: regressor has dimension " + std::to_string(x.size()) +
                                    ", expected " + std::to_string(n));
    }
    if (!x.allFinite() || !std::isfinite(y)) {
        throw std::invalid_argument("rls_step: non-finite data at t=" + std::to_string(state.t + 1));
    }

    const double e = innovation(state, x, y);
    const Vector Px = state.P * x;
    const double denom = state.lambda + x.dot(Px);
    const Vector q = Px / denom;

    state.theta += q * e;
    // P x^T P equals q (P x)^T for symmetric P.
    state.P = (state.P - q * Px.transpose()) / state.lambda;

    const double scale = state.P.cwiseAbs().maxCoeff();
    state.last_asymmetry =
        scale > 0.0 ? (state.P - state.P.transpose()).cwiseAbs().maxCoeff() / scale : 0.0;
    state.P = ((state.P + state.P.transpose()) / 2.0).eval();

    state.last_q = q;
    state.last_A = Matrix::Identity(n, n) - q * x.transpose();
    ++state.t;
    return state;
}

} // namespace ivest
