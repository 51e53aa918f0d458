#include "hypercover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hypercover {

std::string to_string(CubeStatus s) {
    switch (s) {
        case CubeStatus::Homogeneous: return "homogeneous";
        case CubeStatus::Inhomogeneous: return "inhomogeneous";
        case CubeStatus::Violating: return "violating";
        case CubeStatus::Empty: return "empty";
        case CubeStatus::Filled: return "filled";
    }
    return "?";
}

bool Hypercube::contains(std::span<const double> x) const {
    for (std::size_t j = 0; j < lower.size(); ++j) {
        if (!(lower[j] <= x[j] && x[j] < upper[j])) return false;
    }
    return true;
}

double Hypercube::volume() const {
    double v = 1.0;
    for (std::size_t j = 0; j < lower.size(); ++j) v *= upper[j] - lower[j];
    return v;
}

double Hypercube::aspect_ratio() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (std::size_t j = 0; j < lower.size(); ++j) {
        double b = upper[j] - lower[j];
        lo = std::min(lo, b);
        hi = std::max(hi, b);
    }
    return hi / lo;
}

double Hypercube::exterior_excess(std::span<const double> x) const {
    double s = 0.0;
    for (std::size_t j = 0; j < lower.size(); ++j) {
        s += std::max(0.0, x[j] - upper[j]);
        s += std::max(0.0, lower[j] - x[j]);
    }
    return s;
}

double Hypercube::boundary_distance(std::span<const double> x) const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lower.size(); ++j) {
        d = std::min(d, std::abs(x[j] - lower[j]));
        d = std::min(d, std::abs(x[j] - upper[j]));
    }
    return d;
}

Hypercube bounding_box(const std::vector<LabeledPoint>& points) {
    if (points.empty()) throw std::invalid_argument("bounding_box: no points");
    const std::size_t n = points[0].coords.size();
    Hypercube box;
    box.lower = points[0].coords;
    box.upper = points[0].coords;
    for (const auto& p : points) {
        if (p.coords.size() != n)
            throw std::invalid_argument("bounding_box: mixed point dimensions");
        for (std::size_t j = 0; j < n; ++j) {
            box.lower[j] = std::min(box.lower[j], p.coords[j]);
            box.upper[j] = std::max(box.upper[j], p.coords[j]);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        double range = box.upper[j] - box.lower[j];
        if (range == 0.0) {
            // degenerate axis: open up a symmetric sliver
            box.lower[j] -= 1e-9;
            box.upper[j] += 1e-9;
        } else {
            // keep boundary-maximal points inside the half-open box
            box.upper[j] += std::max(1e-9, 1e-9 * range);
        }
    }
    return box;
}

}  // namespace hypercover
