#include "hypercover/svg.hpp"

#include <cstdio>
#include <stdexcept>

namespace hypercover {

namespace {

const char* kPalette[10] = {
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1",
    "#76b7b2", "#edc948", "#ff9da7", "#9c755f", "#bab0ac",
};

const char* class_color(int c) {
    return c >= 0 ? kPalette[c % 10] : "#e8e8e8";
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

std::string cover_to_svg(const Cover& cover, const std::vector<LabeledPoint>& points) {
    if (cover.n_dims != 2)
        throw std::invalid_argument("cover_to_svg: only 2D covers render");

    const double W = 800.0, H = 800.0, pad = 10.0;
    const Hypercube& bc = cover.bounding_cube;
    double sx = (W - 2 * pad) / bc.extent(0);
    double sy = (H - 2 * pad) / bc.extent(1);
    auto X = [&](double x) { return pad + (x - bc.lower[0]) * sx; };
    // svg y grows downward
    auto Y = [&](double y) { return H - pad - (y - bc.lower[1]) * sy; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) +
           "\" height=\"" + num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (const auto& leaf : cover.leaves) {
        double opacity = 0.85;
        if (leaf.status == CubeStatus::Filled) opacity = 0.40;
        if (leaf.status == CubeStatus::Violating) opacity = 0.60;
        if (leaf.status == CubeStatus::Empty) opacity = 1.0;
        svg += "<rect x=\"" + num(X(leaf.lower[0])) + "\" y=\"" + num(Y(leaf.upper[1])) +
               "\" width=\"" + num(leaf.extent(0) * sx) +
               "\" height=\"" + num(leaf.extent(1) * sy) +
               "\" fill=\"" + class_color(leaf.assigned_class) +
               "\" fill-opacity=\"" + num(opacity) +
               "\" stroke=\"#444\" stroke-width=\"0.6\"/>\n";
    }

    for (const auto& p : points) {
        svg += "<circle cx=\"" + num(X(p.coords[0])) + "\" cy=\"" + num(Y(p.coords[1])) +
               "\" r=\"3\" fill=\"" + class_color(p.label) +
               "\" stroke=\"black\" stroke-width=\"0.7\"/>\n";
    }

    svg += "</svg>\n";
    return svg;
}

}  // namespace hypercover
