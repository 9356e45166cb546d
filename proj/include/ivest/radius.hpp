#pragma once

#include <cstddef>
#include <deque>
#include <string>
#include <vector>

#include "ivest/interval.hpp"

namespace ivest {

enum class RadiusKind { Exact, Truncated };

struct RadiusMode {
    RadiusKind kind{RadiusKind::Exact};
    std::size_t m{0}; // truncation horizon, Truncated only

    static RadiusMode exact() { return {RadiusKind::Exact, 0}; }
    static RadiusMode truncated(std::size_t m) { return {RadiusKind::Truncated, m}; }

    // "exact" or "m<horizon>"
    std::string label() const;
    // Inverse of label(); also accepts "N" / a bare integer for a horizon.
    static RadiusMode parse(const std::string& text);

    bool operator==(const RadiusMode&) const = default;
};

inline constexpr std::size_t kDefaultMaxExactHorizon = 100000;

// Radius of the error box of e(t) = A(t) e(t-1) + B(t) w(t), with |e(0)| box
// radius r0 and w(t) in a box of radius r_w(t):
//
//   exact:      r(t) = |Phi(t,0)| r0 + sum_{k=1..t} |Phi(t,k) B(k)| r_w(k)
//   truncated:  r(t) = |Phi(t,t-m)| r(t-m) + sum_{k=t-m+1..t} |Phi(t,k) B(k)| r_w(k),  t > m
//
// Absolute values are only ever taken of fully formed products.
class RadiusPropagator {
public:
    RadiusPropagator(Vector r0, Eigen::Index input_width, RadiusMode mode,
                     std::size_t max_exact_horizon = kDefaultMaxExactHorizon);

    // Advances to t+1 and returns the new radius.
    const Vector& step(const Matrix& A, const Matrix& B, const Vector& input_radius);

    const Vector& radius() const { return radius_; }
    std::size_t t() const { return t_; }
    const RadiusMode& mode() const { return mode_; }

    // Number of propagated Phi(t,k) B(k) terms currently held.
    std::size_t stored_terms() const { return terms_.size(); }
    std::size_t stored_products() const { return products_.size(); }
    std::size_t stored_radii() const { return past_radii_.size(); }

private:
    struct Term {
        Matrix propagated; // Phi(t,k) B(k)
        Vector input_radius;
    };

    Vector sum_terms() const;

    Vector r0_;
    Eigen::Index width_;
    RadiusMode mode_;
    std::size_t max_exact_horizon_;
    std::size_t t_{0};
    Vector radius_;

    std::deque<Term> terms_;
    // Exact: products_[0] = Phi(t,0).
    // Truncated: products_[j-1] = Phi(t, t-j), j = 1..min(t, m).
    std::vector<Matrix> products_;
    // Truncated: r(t-m) .. r(t-1), oldest first, r(0) = r0.
    std::deque<Vector> past_radii_;
};

} // namespace ivest
