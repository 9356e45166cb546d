#include <doctest.h>

#include <algorithm>
#include <limits>
#include <stdexcept>

#include "ivest/interval.hpp"
#include "test_support.hpp"

using namespace ivest;
using ivest::testing::random_box;
using ivest::testing::random_matrix;
using ivest::testing::random_point_in;

namespace {

Vector vec(std::initializer_list<double> values)
{
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) {
        v[i++] = x;
    }
    return v;
}

// Componentwise min/max of M v over all vertices v of z.
IntervalVector vertex_hull(const Matrix& M, const IntervalVector& z)
{
    const auto m = z.size();
    Vector lo = Vector::Constant(M.rows(), std::numeric_limits<double>::infinity());
    Vector hi = Vector::Constant(M.rows(), -std::numeric_limits<double>::infinity());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        Vector v(m);
        for (Eigen::Index j = 0; j < m; ++j) {
            v[j] = ((mask >> j) & 1u) ? z.upper()[j] : z.lower()[j];
        }
        const Vector image = M * v;
        lo = lo.cwiseMin(image);
        hi = hi.cwiseMax(image);
    }
    return IntervalVector::from_bounds(lo, hi);
}

} // namespace

TEST_CASE("from_bounds builds boxes and derived views")
{
    const auto point = IntervalVector::from_bounds(vec({0, 0}), vec({0, 0}));
    CHECK(point.radius() == vec({0, 0}));

    const auto box = IntervalVector::from_bounds(vec({-1, 0}), vec({1, 2}));
    CHECK(box.center() == vec({0, 1}));
    CHECK(box.radius() == vec({1, 1}));

    CHECK_THROWS_AS(IntervalVector::from_bounds(vec({1}), vec({0})), std::invalid_argument);
    CHECK_THROWS_AS(IntervalVector::from_bounds(vec({0, 0}), vec({1})), std::invalid_argument);
}

TEST_CASE("center/radius round trip")
{
    Rng rng(11);
    for (int k = 0; k < 200; ++k) {
        const auto box = random_box(rng, 5, 10.0);
        const auto back = IntervalVector::from_center_radius(box.center(), box.radius());
        const double scale = box.lower().cwiseAbs().maxCoeff() + box.upper().cwiseAbs().maxCoeff();
        CHECK((back.lower() - box.lower()).cwiseAbs().maxCoeff() <= 4 * std::numeric_limits<double>::epsilon() * scale);
        CHECK((back.upper() - box.upper()).cwiseAbs().maxCoeff() <= 4 * std::numeric_limits<double>::epsilon() * scale);
    }
    CHECK_THROWS_AS(IntervalVector::from_center_radius(vec({0}), vec({-1})), std::invalid_argument);
}

TEST_CASE("tightest_image examples")
{
    const auto z = IntervalVector::from_bounds(vec({-1, 0}), vec({1, 2}));
    CHECK(tightest_image(Matrix::Identity(2, 2), z) == z);

    Matrix M(2, 2);
    M << 2, 0, 0, -3;
    const auto image = tightest_image(M, z);
    const auto expected = vertex_hull(M, z);
    CHECK(image == expected);
    CHECK(image.center() == vec({0, -3}));
    CHECK(image.radius() == vec({2, 3}));

    Matrix row(1, 2);
    row << 1, -1;
    const auto unit = IntervalVector::from_bounds(vec({-1, -1}), vec({1, 1}));
    const auto hull = vertex_hull(row, unit);
    CHECK(tightest_image(row, unit) == hull);
    CHECK(hull.radius()[0] == 2.0);
    CHECK(hull.center()[0] == 0.0);

    CHECK_THROWS_AS(tightest_image(Matrix::Identity(3, 3), z), std::invalid_argument);
}

TEST_CASE("tightest_image is attained at vertices")
{
    Rng rng(2024);
    for (Eigen::Index m = 1; m <= 12; ++m) {
        for (int rep = 0; rep < 5; ++rep) {
            const auto n = static_cast<Eigen::Index>(1 + rng.next_u64() % 4);
            const Matrix M = random_matrix(rng, n, m, 3.0);
            const auto z = random_box(rng, m, 2.0);
            const auto image = tightest_image(M, z);
            const auto hull = vertex_hull(M, z);
            const double tol = 1e-12 * (1.0 + M.cwiseAbs().sum() * 4.0);
            CHECK((image.lower() - hull.lower()).cwiseAbs().maxCoeff() <= tol);
            CHECK((image.upper() - hull.upper()).cwiseAbs().maxCoeff() <= tol);
        }
    }
}

TEST_CASE("tightest_image contains every mapped point")
{
    Rng rng(7);
    for (int k = 0; k < 1000; ++k) {
        const Matrix M = random_matrix(rng, 3, 4, 2.0);
        const auto z = random_box(rng, 4);
        const auto image = tightest_image(M, z);
        CHECK(contains(image, M * random_point_in(rng, z), 1e-12));
    }
}

TEST_CASE("intersect")
{
    const auto a = IntervalVector::scalar(0, 2);
    const auto b = IntervalVector::scalar(1, 3);
    const auto ab = intersect(a, b);
    REQUIRE(ab.consistent());
    CHECK(*ab.box == IntervalVector::scalar(1, 2));
    CHECK(*intersect(a, a).box == a);

    const auto disjoint = intersect(IntervalVector::scalar(0, 1), IntervalVector::scalar(2, 3));
    CHECK_FALSE(disjoint.consistent());
    REQUIRE(disjoint.empty_components.size() == 1);
    CHECK(disjoint.empty_components[0] == 0);

    CHECK_THROWS_AS(intersect(a, IntervalVector::point(vec({0, 0}))), std::invalid_argument);
}

TEST_CASE("intersect is commutative, associative and idempotent")
{
    Rng rng(5);
    int checked = 0;
    for (int k = 0; k < 500; ++k) {
        const auto a = random_box(rng, 3);
        const auto b = random_box(rng, 3);
        const auto c = random_box(rng, 3);
        CHECK(*intersect(a, a).box == a);
        const auto ab = intersect(a, b);
        const auto ba = intersect(b, a);
        CHECK(ab.consistent() == ba.consistent());
        if (!ab.consistent()) {
            continue;
        }
        CHECK(*ab.box == *ba.box);
        const auto bc = intersect(b, c);
        const auto left = intersect(*ab.box, c);
        if (bc.consistent() && left.consistent()) {
            CHECK(*left.box == *intersect(a, *bc.box).box);
            ++checked;
        }
    }
    CHECK(checked > 20);
}

TEST_CASE("translate")
{
    const auto unit = IntervalVector::scalar(0, 1);
    CHECK(translate(unit, IntervalVector::scalar(0, 0)) == unit);
    CHECK(translate(unit, IntervalVector::scalar(-0.1, 0.1)) == IntervalVector::scalar(-0.1, 1.1));
    CHECK(translate(IntervalVector::scalar(1, 2), IntervalVector::scalar(1, 1)) == IntervalVector::scalar(2, 3));

    Rng rng(9);
    for (int k = 0; k < 100; ++k) {
        const auto a = random_box(rng, 4);
        const auto d = random_box(rng, 4);
        const auto s = translate(a, d);
        CHECK((s.center() - (a.center() + d.center())).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((s.radius() - (a.radius() + d.radius())).cwiseAbs().maxCoeff() <= 1e-15);
    }
}

TEST_CASE("contains")
{
    const auto unit = IntervalVector::from_bounds(vec({0, 0}), vec({1, 1}));
    CHECK(contains(unit, vec({0.5, 0.5})));
    CHECK(contains(unit, vec({1, 1})));
    CHECK_FALSE(contains(unit, vec({1 + 1e-12, 0.5})));
    CHECK(contains(unit, vec({1 + 1e-12, 0.5}), 1e-9));
    CHECK_THROWS_AS(contains(unit, vec({0.5})), std::invalid_argument);
}
