#pragma once

#include <cstddef>
#include <span>
#include <string>

#include "ivest/interval.hpp"

namespace ivest {

// Excitation levels over all windows of length T.
struct PeLevels {
    double alpha{}; // min over windows of the smallest Gram eigenvalue
    double beta{};  // max over windows of the largest Gram eigenvalue
};

// Uniform bounds gamma1 I <= P^{-1}(t) <= gamma2 I for the RLS information matrix.
struct GammaBounds {
    double gamma1{};
    double gamma2{};
    double delta1{};
    double delta2{};
};

// Constants of ||Phi(t, t0)||_F <= c rho^(t - t0).
struct Contraction {
    double c{};
    double rho{};
};

struct AsymptoticRadius {
    double limsup_bound{}; // bound on limsup ||r_m(t)||_2 for horizon m
    double b_inf_star{};   // m -> infinity limit
};

// Eigenvalues of a window Gram below this fraction of max(1, beta) are
// treated as zero.
inline constexpr double kRankTolerance = 1e-12;

// Throws std::invalid_argument if T == 0 or the sequence is shorter than T.
PeLevels pe_levels(std::span<const Vector> regressors, std::size_t T);

// delta1/delta2 are taken over P^{-1}(0..T-1) advanced with
// P^{-1}(t) = lambda P^{-1}(t-1) + x(t) x(t)^T, where regressors[0] is x(1).
// Throws std::domain_error when alpha <= 0 or lambda is outside (0, 1).
GammaBounds gamma_bounds(std::span<const Vector> regressors, std::size_t T, double lambda,
                         const Matrix& P0, double alpha, double beta);

Contraction contraction_constants(std::size_t n, double gamma1, double gamma2, double lambda);

// Real-valued threshold -ln(n gamma2 / gamma1) / ln(lambda). An integer
// horizon with guaranteed boundedness is ceil(m_star) + 1.
double m_star(std::size_t n, double gamma1, double gamma2, double lambda);

// (1/gamma1) [lambda^t sigma_max ||theta_err0||^2 + sum_k lambda^(t-k) v(k)^2]
// with noise_history[k-1] = v(k), k = 1..t. Bounds ||theta(t) - theta_true||^2.
double iss_envelope(std::size_t t, double lambda, double sigma_max_P0inv, double gamma1,
                    double theta_err0_norm, std::span<const double> noise_history);

// sqrt(lambda^t sigma_max / gamma1) ||theta_err0||, noise-free decay of the RLS error.
double noise_free_envelope(std::size_t t, double lambda, double sigma_max_P0inv, double gamma1,
                           double theta_err0_norm);

// Throws std::domain_error when c rho^m >= 1 (the bound is vacuous there).
AsymptoticRadius asymptotic_radius_bound(double c, double rho, double eta_q, double eta_v, std::size_t m);

// Upper bound on sup_t ||q(t)||_2 from the P bounds and regressor norms.
double eta_q_bound(double gamma1, double gamma2, double lambda, double h_min, double h_max);

// Closed-form upper bound on b_inf_star in terms of the data richness constants.
double b_inf_star_refined(std::size_t n, double gamma1, double gamma2, double lambda, double eta_v,
                          double h_min, double h_max);

struct PeReport {
    std::size_t T{};
    double alpha{};
    double beta{};
    bool is_pe{false};
    double gamma1{};
    double gamma2{};
    double delta1{};
    double delta2{};
    double c{};
    double rho{};
    double m_star{};
    double eta_q{};
    double eta_v{};
    double b_inf_star_bound{};
    double h_min{};
    double h_max{};

    // Flat key=value lines.
    std::string to_key_value() const;
    // "quantity,value" rows.
    std::string to_csv() const;
};

// Full diagnostic over a finite regressor sequence. Quantities that only
// exist under PE are NaN when alpha == 0.
PeReport analyze_pe(std::span<const Vector> regressors, std::size_t T, double lambda, const Matrix& P0,
                    double eta_v);

} // namespace ivest
