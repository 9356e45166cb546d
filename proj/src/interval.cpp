#include "ivest/interval.hpp"

#include <stdexcept>
#include <string>

namespace ivest {

namespace {

void require_same_size(Eigen::Index a, Eigen::Index b, const char* what)
{
    if (a != b) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
    }
}

} // namespace

IntervalVector IntervalVector::from_bounds(Vector lower, Vector upper)
{
    require_same_size(lower.size(), upper.size(), "from_bounds");
    for (Eigen::Index i = 0; i < lower.size(); ++i) {
        if (!(lower[i] <= upper[i])) {
            throw std::invalid_argument("from_bounds: lower[" + std::to_string(i) + "] > upper[" +
                                        std::to_string(i) + "]");
        }
    }
    return IntervalVector(std::move(lower), std::move(upper));
}

IntervalVector IntervalVector::from_center_radius(const Vector& center, const Vector& radius)
{
    require_same_size(center.size(), radius.size(), "from_center_radius");
    for (Eigen::Index i = 0; i < radius.size(); ++i) {
        if (!(radius[i] >= 0.0)) {
            throw std::invalid_argument("from_center_radius: negative radius at component " +
                                        std::to_string(i));
        }
    }
    return IntervalVector(center - radius, center + radius);
}

IntervalVector IntervalVector::point(const Vector& p)
{
    return IntervalVector(p, p);
}

IntervalVector IntervalVector::scalar(double lower, double upper)
{
    return from_bounds(Vector::Constant(1, lower), Vector::Constant(1, upper));
}

bool IntervalVector::operator==(const IntervalVector& other) const
{
    return lower_.size() == other.lower_.size() && lower_ == other.lower_ && upper_ == other.upper_;
}

IntervalVector tightest_image(const Matrix& M, const IntervalVector& z)
{
    require_same_size(M.cols(), z.size(), "tightest_image");
    const Vector c = M * z.center();
    const Vector r = M.cwiseAbs() * z.radius();
    return IntervalVector::from_center_radius(c, r);
}

Intersection intersect(const IntervalVector& a, const IntervalVector& b)
{
    require_same_size(a.size(), b.size(), "intersect");
    Vector lo = a.lower().cwiseMax(b.lower());
    Vector hi = a.upper().cwiseMin(b.upper());

    Intersection out;
    for (Eigen::Index i = 0; i < lo.size(); ++i) {
        if (lo[i] > hi[i]) {
            out.empty_components.push_back(i);
        }
    }
    if (out.empty_components.empty()) {
        out.box = IntervalVector::from_bounds(std::move(lo), std::move(hi));
    }
    return out;
}

IntervalVector translate(const IntervalVector& a, const IntervalVector& d)
{
    require_same_size(a.size(), d.size(), "translate");
    return IntervalVector::from_bounds(a.lower() + d.lower(), a.upper() + d.upper());
}

bool contains(const IntervalVector& a, const Vector& p, double slack)
{
    require_same_size(a.size(), p.size(), "contains");
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (!(a.lower()[i] - slack <= p[i] && p[i] <= a.upper()[i] + slack)) {
            return false;
        }
    }
    return true;
}

} // namespace ivest
