#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hypercover/data.hpp"
#include "hypercover/geometry.hpp"
#include "test_util.hpp"

using namespace hypercover;
using test_util::pt;

TEST_CASE("bounding_box is the componentwise min/max with an inflated upper face") {
    std::vector<LabeledPoint> pts = {pt({0, 0}, 0), pt({1, 2}, 1), pt({-1, 3}, 0)};
    Hypercube box = bounding_box(pts);
    CHECK(box.lower[0] == -1.0);
    CHECK(box.lower[1] == 0.0);
    // upper face inflated by max(1e-9, 1e-9 * range) so max points stay inside
    CHECK(box.upper[0] > 1.0);
    CHECK(box.upper[1] > 3.0);
    CHECK(box.upper[0] == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(box.upper[1] == doctest::Approx(3.0).epsilon(1e-7));
    for (const auto& p : pts) CHECK(box.contains(p.coords));
}

TEST_CASE("bounding_box inflates degenerate axes symmetrically") {
    Hypercube box = bounding_box({pt({5, 5}, 0)});
    for (int j = 0; j < 2; ++j) {
        CHECK(box.lower[j] == doctest::Approx(5.0 - 1e-9));
        CHECK(box.upper[j] == doctest::Approx(5.0 + 1e-9));
        CHECK(box.extent(j) > 0.0);
    }
    std::vector<double> x = {5, 5};
    CHECK(box.contains(x));
}

TEST_CASE("bounding_box rejects empty and mixed-dimension input") {
    CHECK_THROWS_AS(bounding_box({}), std::invalid_argument);
    CHECK_THROWS_AS(bounding_box({pt({0, 0}, 0), pt({1}, 1)}), std::invalid_argument);
}

TEST_CASE("bounding_box contains every point of a real training split") {
    const auto& train = test_util::iris2_split().train;
    Hypercube box = bounding_box(train.points);
    CHECK(train.points.size() == 105);
    for (const auto& p : train.points) CHECK(box.contains(p.coords));
}

TEST_CASE("contains follows the half-open rule") {
    Hypercube c = test_util::box({0, 0}, {1, 1}, CubeStatus::Empty);
    std::vector<double> on_lower = {0.0, 0.0};
    std::vector<double> on_upper = {1.0, 0.5};
    std::vector<double> inside = {0.999999, 0.5};
    std::vector<double> outside = {-0.1, 0.5};
    CHECK(c.contains(on_lower));
    CHECK_FALSE(c.contains(on_upper));
    CHECK(c.contains(inside));
    CHECK_FALSE(c.contains(outside));
}

TEST_CASE("volume and aspect ratio") {
    Hypercube c = test_util::box({0, 0}, {1, 4}, CubeStatus::Empty);
    CHECK(c.volume() == doctest::Approx(4.0));
    CHECK(c.aspect_ratio() == doctest::Approx(4.0));
    Hypercube unit = test_util::box({0, 0, 0}, {1, 1, 1}, CubeStatus::Empty);
    CHECK(unit.volume() == doctest::Approx(1.0));
    CHECK(unit.aspect_ratio() == doctest::Approx(1.0));
}

TEST_CASE("exterior_excess sums per-axis overshoot") {
    Hypercube c = test_util::box({0, 0}, {1, 1}, CubeStatus::Empty);
    std::vector<double> inside = {0.5, 0.5};
    std::vector<double> one_axis = {1.3, 0.5};
    std::vector<double> two_axes = {1.3, -0.2};
    CHECK(c.exterior_excess(inside) == 0.0);
    CHECK(c.exterior_excess(one_axis) == doctest::Approx(0.3));
    CHECK(c.exterior_excess(two_axes) == doctest::Approx(0.5));
}

TEST_CASE("boundary_distance is the smallest face-plane distance") {
    Hypercube c = test_util::box({0, 0}, {1, 1}, CubeStatus::Empty);
    std::vector<double> center = {0.5, 0.5};
    std::vector<double> near_left = {0.25, 0.5};
    std::vector<double> outside = {1.25, 0.5};
    CHECK(c.boundary_distance(center) == doctest::Approx(0.5));
    CHECK(c.boundary_distance(near_left) == doctest::Approx(0.25));
    CHECK(c.boundary_distance(outside) == doctest::Approx(0.25));
}
