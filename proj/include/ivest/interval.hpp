#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace ivest {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Axis-aligned box [lower, upper] in R^n. Bounds are the stored form;
// center/radius are derived on demand.
class IntervalVector {
public:
    IntervalVector() = default;

    // Throws std::invalid_argument on size mismatch or lower_i > upper_i.
    static IntervalVector from_bounds(Vector lower, Vector upper);
    // Throws std::invalid_argument on size mismatch or a negative radius entry.
    static IntervalVector from_center_radius(const Vector& center, const Vector& radius);
    static IntervalVector point(const Vector& p);
    static IntervalVector scalar(double lower, double upper);

    const Vector& lower() const { return lower_; }
    const Vector& upper() const { return upper_; }
    Vector center() const { return (upper_ + lower_) / 2.0; }
    Vector radius() const { return (upper_ - lower_) / 2.0; }
    Vector width() const { return upper_ - lower_; }
    Eigen::Index size() const { return lower_.size(); }

    bool operator==(const IntervalVector& other) const;

private:
    IntervalVector(Vector lower, Vector upper) : lower_(std::move(lower)), upper_(std::move(upper)) {}

    Vector lower_;
    Vector upper_;
};

// Outcome of an intersection: either a box, or the list of components on
// which the two operands are disjoint.
struct Intersection {
    std::optional<IntervalVector> box;
    std::vector<Eigen::Index> empty_components;

    bool consistent() const { return box.has_value(); }
};

// Smallest box containing { M z : z in box }: center M c_z, radius |M| r_z.
IntervalVector tightest_image(const Matrix& M, const IntervalVector& z);

Intersection intersect(const IntervalVector& a, const IntervalVector& b);

// Minkowski sum of two boxes.
IntervalVector translate(const IntervalVector& a, const IntervalVector& d);

// lower - slack <= p <= upper + slack, componentwise.
bool contains(const IntervalVector& a, const Vector& p, double slack = 0.0);

} // namespace ivest
