#include "hypercover/porosity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypercover {

double contact_area(const Hypercube& a, const Hypercube& b, double tol) {
    const std::size_t n = a.dims();
    if (b.dims() != n) throw std::invalid_argument("contact_area: dimension mismatch");

    int touching = 0;
    double area = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double ov = std::min(a.upper[j], b.upper[j]) - std::max(a.lower[j], b.lower[j]);
        if (ov > tol) {
            area *= ov;
        } else if (ov >= -tol) {
            // intervals touch at a point: adjacency candidate on this axis
            ++touching;
            if (touching > 1) return 0.0;
        } else {
            return 0.0;  // disjoint along this axis
        }
    }
    return touching == 1 ? area : 0.0;
}

double default_contact_tol(const Cover& cover) {
    double scale = 0.0;
    for (std::size_t j = 0; j < cover.bounding_cube.dims(); ++j)
        scale = std::max(scale, cover.bounding_cube.extent(j));
    return 1e-9 * std::max(scale, 1.0);
}

std::vector<std::vector<ContactRecord>> build_adjacency(const Cover& cover, double tol) {
    const std::size_t L = cover.leaves.size();
    std::vector<std::vector<ContactRecord>> adj(L);

    // sort by lower bound on axis 0; pairs further apart than the sweep
    // window on that axis cannot touch
    std::vector<std::size_t> order(L);
    for (std::size_t i = 0; i < L; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return cover.leaves[x].lower[0] < cover.leaves[y].lower[0];
    });

    for (std::size_t oi = 0; oi < L; ++oi) {
        std::size_t i = order[oi];
        const Hypercube& a = cover.leaves[i];
        for (std::size_t oj = oi + 1; oj < L; ++oj) {
            std::size_t j = order[oj];
            const Hypercube& b = cover.leaves[j];
            if (b.lower[0] > a.upper[0] + tol) break;  // swept past any contact
            double area = contact_area(a, b, tol);
            if (area > 0.0) {
                // the unique axis with ~zero overlap is the shared facet's normal
                int axis = 0;
                for (std::size_t k = 0; k < a.dims(); ++k) {
                    double ov = std::min(a.upper[k], b.upper[k]) -
                                std::max(a.lower[k], b.lower[k]);
                    if (ov <= tol) { axis = static_cast<int>(k); break; }
                }
                adj[i].push_back({j, axis, area});
                adj[j].push_back({i, axis, area});
            }
        }
    }
    return adj;
}

std::size_t fill_step(Cover& cover, const std::vector<std::vector<ContactRecord>>& adjacency) {
    auto votes_class = [&](const Hypercube& c) {
        return c.status == CubeStatus::Homogeneous || c.status == CubeStatus::Violating ||
               c.status == CubeStatus::Filled;
    };

    std::vector<std::pair<std::size_t, int>> assignments;
    for (std::size_t i = 0; i < cover.leaves.size(); ++i) {
        if (cover.leaves[i].status != CubeStatus::Empty) continue;
        std::vector<double> area_by_class(cover.n_classes, 0.0);
        bool any = false;
        for (const ContactRecord& r : adjacency[i]) {
            const Hypercube& nb = cover.leaves[r.neighbor_id];
            if (!votes_class(nb)) continue;
            area_by_class[nb.assigned_class] += r.area;
            any = true;
        }
        if (!any) continue;
        int best = 0;
        for (int c = 1; c < cover.n_classes; ++c)
            if (area_by_class[c] > area_by_class[best]) best = c;
        assignments.emplace_back(i, best);
    }

    // apply after the scan so every vote saw the pre-round state
    for (auto [i, c] : assignments) {
        cover.leaves[i].status = CubeStatus::Filled;
        cover.leaves[i].assigned_class = c;
    }
    return assignments.size();
}

void fill(Cover& cover) {
    bool seed = false;
    for (const auto& c : cover.leaves) {
        if (c.status == CubeStatus::Homogeneous || c.status == CubeStatus::Violating ||
            c.status == CubeStatus::Filled) {
            seed = true;
            break;
        }
    }
    if (!seed) throw std::runtime_error("fill: cover has no non-empty leaves");
    if (cover.count(CubeStatus::Empty) == 0) return;

    auto adjacency = build_adjacency(cover, default_contact_tol(cover));
    while (cover.count(CubeStatus::Empty) > 0) {
        std::size_t assigned = fill_step(cover, adjacency);
        if (assigned == 0)
            throw std::logic_error("fill: no progress; adjacency graph disconnected?");
    }
}

}  // namespace hypercover
