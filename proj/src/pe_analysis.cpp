#include "ivest/pe_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ivest/csv.hpp"

namespace ivest {

namespace {

void require_lambda_open(double lambda, const char* what)
{
    if (!(lambda > 0.0 && lambda < 1.0)) {
        throw std::domain_error(std::string(what) + ": forgetting factor must lie in (0, 1)");
    }
}

void require_positive_gamma(double gamma1, const char* what)
{
    if (!(gamma1 > 0.0)) {
        throw std::domain_error(std::string(what) + ": gamma1 must be positive");
    }
}

std::pair<double, double> extreme_eigenvalues(const Matrix& S)
{
    Eigen::SelfAdjointEigenSolver<Matrix> eig(S, Eigen::EigenvaluesOnly);
    const auto& ev = eig.eigenvalues(); // ascending
    return {ev[0], ev[ev.size() - 1]};
}

} // namespace

PeLevels pe_levels(std::span<const Vector> regressors, std::size_t T)
{
    if (T == 0) {
        throw std::invalid_argument("pe_levels: window length must be >= 1");
    }
    if (regressors.size() < T) {
        throw std::invalid_argument("pe_levels: sequence of length " + std::to_string(regressors.size()) +
                                    " is shorter than the window " + std::to_string(T));
    }
    const auto n = regressors.front().size();

    // Sliding Gram sum; recomputed from scratch every T windows to bound drift.
    double alpha = std::numeric_limits<double>::infinity();
    double beta = 0.0;
    Matrix gram = Matrix::Zero(n, n);
    for (std::size_t start = 0; start + T <= regressors.size(); ++start) {
        if (start % T == 0) {
            gram.setZero();
            for (std::size_t k = start; k < start + T; ++k) {
                gram.noalias() += regressors[k] * regressors[k].transpose();
            }
        } else {
            const auto& out = regressors[start - 1];
            const auto& in = regressors[start + T - 1];
            gram.noalias() -= out * out.transpose();
            gram.noalias() += in * in.transpose();
        }
        const auto [lo, hi] = extreme_eigenvalues(gram);
        alpha = std::min(alpha, lo);
        beta = std::max(beta, hi);
    }
    beta = std::max(beta, 0.0);
    if (alpha <= kRankTolerance * std::max(1.0, beta)) {
        alpha = 0.0;
    }
    return {alpha, beta};
}

GammaBounds gamma_bounds(std::span<const Vector> regressors, std::size_t T, double lambda, const Matrix& P0,
                         double alpha, double beta)
{
    if (!(alpha > 0.0)) {
        throw std::domain_error("gamma_bounds: regressors are not persistently exciting (alpha <= 0)");
    }
    require_lambda_open(lambda, "gamma_bounds");
    if (T == 0 || regressors.size() + 1 < T) {
        throw std::invalid_argument("gamma_bounds: need x(1..T-1) for the initial transient");
    }

    Matrix info = P0.inverse();
    info = (info + info.transpose()) / 2.0;
    const double sigma_max0 = extreme_eigenvalues(info).second;

    GammaBounds g;
    g.delta1 = std::numeric_limits<double>::infinity();
    g.delta2 = 0.0;
    for (std::size_t t = 0; t < T; ++t) {
        if (t > 0) {
            const auto& x = regressors[t - 1];
            info = lambda * info + x * x.transpose();
        }
        const auto [lo, hi] = extreme_eigenvalues(info);
        g.delta1 = std::min(g.delta1, lo);
        g.delta2 = std::max(g.delta2, hi);
    }
    const double Td = static_cast<double>(T);
    g.gamma1 = std::min(g.delta1, alpha * std::pow(lambda, 2.0 * Td - 1.0));
    g.gamma2 = std::max(g.delta2, std::pow(lambda, Td) * sigma_max0 + beta * (2.0 - lambda) / (1.0 - lambda));
    return g;
}

Contraction contraction_constants(std::size_t n, double gamma1, double gamma2, double lambda)
{
    require_positive_gamma(gamma1, "contraction_constants");
    require_lambda_open(lambda, "contraction_constants");
    return {std::sqrt(static_cast<double>(n) * gamma2 / gamma1), std::sqrt(lambda)};
}

double m_star(std::size_t n, double gamma1, double gamma2, double lambda)
{
    require_positive_gamma(gamma1, "m_star");
    require_lambda_open(lambda, "m_star");
    return -std::log(static_cast<double>(n) * gamma2 / gamma1) / std::log(lambda);
}

double iss_envelope(std::size_t t, double lambda, double sigma_max_P0inv, double gamma1,
                    double theta_err0_norm, std::span<const double> noise_history)
{
    require_positive_gamma(gamma1, "iss_envelope");
    if (noise_history.size() < t) {
        throw std::invalid_argument("iss_envelope: noise history shorter than t");
    }
    // Horner form of sum_{k=1}^t lambda^(t-k) v(k)^2.
    double driven = 0.0;
    for (std::size_t k = 0; k < t; ++k) {
        driven = lambda * driven + noise_history[k] * noise_history[k];
    }
    const double initial =
        std::pow(lambda, static_cast<double>(t)) * sigma_max_P0inv * theta_err0_norm * theta_err0_norm;
    return (initial + driven) / gamma1;
}

double noise_free_envelope(std::size_t t, double lambda, double sigma_max_P0inv, double gamma1,
                           double theta_err0_norm)
{
    require_positive_gamma(gamma1, "noise_free_envelope");
    return std::sqrt(std::pow(lambda, static_cast<double>(t)) * sigma_max_P0inv / gamma1) * theta_err0_norm;
}

AsymptoticRadius asymptotic_radius_bound(double c, double rho, double eta_q, double eta_v, std::size_t m)
{
    const double rho_m = std::pow(rho, static_cast<double>(m));
    if (!(c * rho_m < 1.0)) {
        throw std::domain_error("asymptotic_radius_bound: c*rho^m = " + std::to_string(c * rho_m) +
                                " >= 1, the bound is vacuous for this horizon");
    }
    AsymptoticRadius out;
    out.b_inf_star = c * eta_q * eta_v / (1.0 - rho);
    out.limsup_bound = out.b_inf_star * (1.0 - rho_m) / (1.0 - c * rho_m);
    return out;
}

double eta_q_bound(double gamma1, double gamma2, double lambda, double h_min, double h_max)
{
    require_positive_gamma(gamma1, "eta_q_bound");
    return (h_max / gamma1) / (lambda + h_min * h_min / gamma2);
}

double b_inf_star_refined(std::size_t n, double gamma1, double gamma2, double lambda, double eta_v,
                          double h_min, double h_max)
{
    require_positive_gamma(gamma1, "b_inf_star_refined");
    require_lambda_open(lambda, "b_inf_star_refined");
    const double ratio = gamma2 / gamma1;
    return eta_v * std::sqrt(static_cast<double>(n)) / (1.0 - std::sqrt(lambda)) * std::pow(ratio, 1.5) * h_max /
           (h_min * h_min + lambda * gamma2);
}

PeReport analyze_pe(std::span<const Vector> regressors, std::size_t T, double lambda, const Matrix& P0,
                    double eta_v)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    PeReport r;
    r.T = T;
    r.eta_v = eta_v;
    const auto levels = pe_levels(regressors, T);
    r.alpha = levels.alpha;
    r.beta = levels.beta;
    r.is_pe = levels.alpha > 0.0;

    r.h_min = std::numeric_limits<double>::infinity();
    r.h_max = 0.0;
    for (const auto& x : regressors) {
        const double h = x.norm();
        r.h_min = std::min(r.h_min, h);
        r.h_max = std::max(r.h_max, h);
    }

    if (!r.is_pe) {
        r.gamma1 = r.gamma2 = r.delta1 = r.delta2 = nan;
        r.c = r.rho = r.m_star = r.eta_q = r.b_inf_star_bound = nan;
        return r;
    }
    const auto n = static_cast<std::size_t>(regressors.front().size());
    const auto g = gamma_bounds(regressors, T, lambda, P0, r.alpha, r.beta);
    r.gamma1 = g.gamma1;
    r.gamma2 = g.gamma2;
    r.delta1 = g.delta1;
    r.delta2 = g.delta2;
    const auto k = contraction_constants(n, g.gamma1, g.gamma2, lambda);
    r.c = k.c;
    r.rho = k.rho;
    r.m_star = m_star(n, g.gamma1, g.gamma2, lambda);
    r.eta_q = eta_q_bound(g.gamma1, g.gamma2, lambda, r.h_min, r.h_max);
    r.b_inf_star_bound = b_inf_star_refined(n, g.gamma1, g.gamma2, lambda, eta_v, r.h_min, r.h_max);
    return r;
}

std::string PeReport::to_key_value() const
{
    std::string out;
    auto line = [&out](const char* key, const std::string& value) {
        out += key;
        out += '=';
        out += value;
        out += '\n';
    };
    line("alpha", format_real(alpha));
    line("beta", format_real(beta));
    line("T", std::to_string(T));
    line("is_pe", is_pe ? "1" : "0");
    line("gamma1", format_real(gamma1));
    line("gamma2", format_real(gamma2));
    line("delta1", format_real(delta1));
    line("delta2", format_real(delta2));
    line("c", format_real(c));
    line("rho", format_real(rho));
    line("m_star", format_real(m_star));
    line("eta_q", format_real(eta_q));
    line("eta_v", format_real(eta_v));
    line("b_inf_star", format_real(b_inf_star_bound));
    line("h_min", format_real(h_min));
    line("h_max", format_real(h_max));
    return out;
}

std::string PeReport::to_csv() const
{
    std::string out = "quantity,value\n";
    const std::string kv = to_key_value();
    for (char ch : kv) {
        out += ch == '=' ? ',' : ch;
    }
    return out;
}

} // namespace ivest
