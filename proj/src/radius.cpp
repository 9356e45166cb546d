#include "ivest/radius.hpp"

#include <charconv>
#include <stdexcept>

namespace ivest {

std::string RadiusMode::label() const
{
    return kind == RadiusKind::Exact ? std::string("exact") : "m" + std::to_string(m);
}

RadiusMode RadiusMode::parse(const std::string& text)
{
    if (text == "exact" || text == "Exact" || text == "N") {
        return exact();
    }
    std::string_view digits = text;
    if (!digits.empty() && (digits.front() == 'm' || digits.front() == 'M')) {
        digits.remove_prefix(1);
    }
    std::size_t m = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), m);
    if (ec != std::errc() || ptr != digits.data() + digits.size() || m == 0) {
        throw std::invalid_argument("radius mode: expected 'exact' or a positive horizon, got '" + text + "'");
    }
    return truncated(m);
}

RadiusPropagator::RadiusPropagator(Vector r0, Eigen::Index input_width, RadiusMode mode,
                                   std::size_t max_exact_horizon)
    : r0_(std::move(r0)), width_(input_width), mode_(mode), max_exact_horizon_(max_exact_horizon), radius_(r0_)
{
    if (mode_.kind == RadiusKind::Truncated && mode_.m == 0) {
        throw std::invalid_argument("RadiusPropagator: truncation horizon must be >= 1");
    }
    if ((r0_.array() < 0.0).any() || !r0_.allFinite()) {
        throw std::invalid_argument("RadiusPropagator: prior radius must be finite and nonnegative");
    }
    const auto n = r0_.size();
    if (mode_.kind == RadiusKind::Exact) {
        products_.push_back(Matrix::Identity(n, n));
    } else {
        past_radii_.push_back(r0_);
    }
}

Vector RadiusPropagator::sum_terms() const
{
    Vector r = Vector::Zero(r0_.size());
    for (const auto& term : terms_) {
        r.noalias() += term.propagated.cwiseAbs() * term.input_radius;
    }
    return r;
}

const Vector& RadiusPropagator::step(const Matrix& A, const Matrix& B, const Vector& input_radius)
{
    const auto n = r0_.size();
    if (A.rows() != n || A.cols() != n || B.rows() != n || B.cols() != width_ || input_radius.size() != width_) {
        throw std::invalid_argument("RadiusPropagator::step: dimension mismatch");
    }
    if ((input_radius.array() < 0.0).any()) {
        throw std::invalid_argument("RadiusPropagator::step: negative input radius");
    }

    if (mode_.kind == RadiusKind::Exact) {
        if (t_ >= max_exact_horizon_) {
            throw std::length_error("exact radius: horizon guard of " + std::to_string(max_exact_horizon_) +
                                    " steps exceeded");
        }
        for (auto& term : terms_) {
            term.propagated = A * term.propagated;
        }
        terms_.push_back({B, input_radius});
        products_[0] = A * products_[0];
        ++t_;
        radius_ = products_[0].cwiseAbs() * r0_;
        radius_ += sum_terms();
        return radius_;
    }

    const std::size_t m = mode_.m;
    for (auto& term : terms_) {
        term.propagated = A * term.propagated;
    }
    terms_.push_back({B, input_radius});
    if (terms_.size() > m) {
        terms_.pop_front();
    }

    // Staggered products: Phi(t, t-j) = A(t) Phi(t-1, t-j), Phi(t, t-1) = A(t).
    if (products_.size() < m) {
        products_.emplace_back();
    }
    for (std::size_t j = products_.size(); j-- > 1;) {
        products_[j] = A * products_[j - 1];
    }
    products_[0] = A;
    ++t_;

    // products_.back() is Phi(t,0) while t <= m and Phi(t,t-m) afterwards;
    // past_radii_.front() is r0 or r(t-m) correspondingly.
    radius_ = products_.back().cwiseAbs() * past_radii_.front();
    radius_ += sum_terms();

    past_radii_.push_back(radius_);
    if (past_radii_.size() > m) {
        past_radii_.pop_front();
    }
    return radius_;
}

} // namespace ivest
