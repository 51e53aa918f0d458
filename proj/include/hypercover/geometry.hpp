#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hypercover {

/// A training sample: n real coordinates plus a class label in {0..m-1}.
struct LabeledPoint {
    std::vector<double> coords;
    int label = 0;
};

enum class CubeStatus {
    Homogeneous,    // all contained points share one class
    Inhomogeneous,  // mixed classes, still splittable
    Violating,      // mixed classes, no feasible bisection axis
    Empty,          // no points
    Filled,         // was Empty, class assigned by porosity fill
};

std::string to_string(CubeStatus s);

/// Axis-aligned box with half-open membership: lower[j] <= x[j] < upper[j].
struct Hypercube {
    std::vector<double> lower;
    std::vector<double> upper;
    CubeStatus status = CubeStatus::Inhomogeneous;
    int assigned_class = -1;             // valid for Homogeneous/Violating/Filled
    std::vector<int> point_indices;      // indices into the owning training set
    int n_points = 0;                    // survives JSON round-trips without the indices

    std::size_t dims() const { return lower.size(); }

    bool contains(std::span<const double> x) const;

    double extent(std::size_t axis) const { return upper[axis] - lower[axis]; }
    double volume() const;

    /// max breadth / min breadth over all axes.
    double aspect_ratio() const;

    /// Sum over axes of how far x sticks out past the bounds; 0 iff x is
    /// inside or on the boundary. Matches the ReLU residual sum of the
    /// compiled network exactly.
    double exterior_excess(std::span<const double> x) const;

    /// Smallest distance from x to any bounding face of this cube
    /// (for interior points: the margin; for exterior points: the
    /// distance to the cube itself).
    double boundary_distance(std::span<const double> x) const;
};

/// Componentwise min/max box around the points, upper face inflated so that
/// the half-open rule still captures boundary-maximal points. Degenerate
/// axes get a symmetric 1e-9 inflation.
/// Throws std::invalid_argument on empty input or mixed dimensions.
Hypercube bounding_box(const std::vector<LabeledPoint>& points);

}  // namespace hypercover
