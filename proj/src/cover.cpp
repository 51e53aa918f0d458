#include "hypercover/cover.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "hypercover/porosity.hpp"

namespace hypercover {

std::size_t Cover::count(CubeStatus s) const {
    std::size_t k = 0;
    for (const auto& c : leaves)
        if (c.status == s) ++k;
    return k;
}

std::vector<const Hypercube*> Cover::by_status(CubeStatus s) const {
    std::vector<const Hypercube*> out;
    for (const auto& c : leaves)
        if (c.status == s) out.push_back(&c);
    return out;
}

std::optional<std::size_t> Cover::find_leaf(std::span<const double> x) const {
    for (std::size_t i = 0; i < leaves.size(); ++i)
        if (leaves[i].contains(x)) return i;
    return std::nullopt;
}

double min_interclass_distance(const std::vector<LabeledPoint>& points) {
    bool multi = false;
    for (std::size_t i = 1; i < points.size(); ++i)
        if (points[i].label != points[0].label) { multi = true; break; }
    if (!multi) throw std::invalid_argument("min_interclass_distance: l* undefined, need two classes");

    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        for (std::size_t j = i + 1; j < points.size(); ++j) {
            if (points[i].label == points[j].label) continue;
            double s = 0.0;
            for (std::size_t k = 0; k < points[i].coords.size(); ++k) {
                double d = points[i].coords[k] - points[j].coords[k];
                s += d * d;
            }
            best = std::min(best, s);
        }
    }
    return std::sqrt(best);
}

double pair_homogeneity(long count_a, long count_b) {
    if (count_a == 0 && count_b == 0) return 0.0;
    return static_cast<double>(std::labs(count_a - count_b)) /
           static_cast<double>(count_a + count_b);
}

double daughter_min_homogeneity(const std::vector<long>& class_counts) {
    return daughter_min_homogeneity(class_counts, ScoreMode::LiteralZero);
}

double daughter_min_homogeneity(const std::vector<long>& class_counts, ScoreMode mode) {
    if (class_counts.size() < 2)
        throw std::invalid_argument("daughter_min_homogeneity: need at least two classes");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < class_counts.size(); ++c) {
        for (std::size_t d = c + 1; d < class_counts.size(); ++d) {
            if (mode == ScoreMode::ExcludeEmptyPairs &&
                class_counts[c] == 0 && class_counts[d] == 0)
                continue;
            best = std::min(best, pair_homogeneity(class_counts[c], class_counts[d]));
        }
    }
    // no surviving pair means the daughter holds no points at all
    if (best == std::numeric_limits<double>::infinity()) return 1.0;
    return best;
}

std::vector<int> feasible_axes(const Hypercube& cube, const CoverConfig& config) {
    const std::size_t n = cube.dims();
    std::vector<double> ext(n);
    for (std::size_t j = 0; j < n; ++j) ext[j] = cube.extent(j);

    std::vector<int> out;
    for (std::size_t a = 0; a < n; ++a) {
        double half = ext[a] / 2.0;
        if (half < config.min_length) continue;
        double lo = half, hi = half;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == a) continue;
            lo = std::min(lo, ext[j]);
            hi = std::max(hi, ext[j]);
        }
        if (hi / lo <= config.max_aspect_ratio) out.push_back(static_cast<int>(a));
    }
    return out;
}

std::vector<AxisScore> score_axes(const Hypercube& cube,
                                  const std::vector<LabeledPoint>& points,
                                  const std::vector<int>& axes,
                                  int n_classes,
                                  ScoreMode mode) {
    if (axes.empty()) throw std::invalid_argument("score_axes: no candidate axes");
    std::vector<AxisScore> out;
    out.reserve(axes.size());
    for (int a : axes) {
        double mid = (cube.lower[a] + cube.upper[a]) / 2.0;
        std::vector<long> counts_a(n_classes, 0), counts_b(n_classes, 0);
        for (int idx : cube.point_indices) {
            if (points[idx].coords[a] < mid)
                ++counts_a[points[idx].label];
            else
                ++counts_b[points[idx].label];
        }
        double ha = daughter_min_homogeneity(counts_a, mode);
        double hb = daughter_min_homogeneity(counts_b, mode);
        out.push_back({a, std::max(ha, hb)});
    }
    return out;
}

int select_bisection_axis(const std::vector<AxisScore>& scores, Rng& rng) {
    double h_star = -1.0;
    for (const auto& s : scores) h_star = std::max(h_star, s.score);
    std::vector<int> tied;
    for (const auto& s : scores)
        if (s.score >= h_star - 1e-15) tied.push_back(s.axis);
    std::sort(tied.begin(), tied.end());
    if (tied.size() == 1) return tied[0];
    return tied[rng.below(tied.size())];
}

std::pair<Hypercube, Hypercube> bisect(const Hypercube& cube, int axis,
                                       const std::vector<LabeledPoint>& points) {
    if (axis < 0 || static_cast<std::size_t>(axis) >= cube.dims())
        throw std::invalid_argument("bisect: axis out of range");
    double mid = (cube.lower[axis] + cube.upper[axis]) / 2.0;

    Hypercube a, b;
    a.lower = cube.lower; a.upper = cube.upper; a.upper[axis] = mid;
    b.lower = cube.lower; b.upper = cube.upper; b.lower[axis] = mid;
    for (int idx : cube.point_indices) {
        if (points[idx].coords[axis] < mid)
            a.point_indices.push_back(idx);
        else
            b.point_indices.push_back(idx);
    }
    a.n_points = static_cast<int>(a.point_indices.size());
    b.n_points = static_cast<int>(b.point_indices.size());
    return {std::move(a), std::move(b)};
}

CubeStatus classify_cube(Hypercube& cube, const std::vector<LabeledPoint>& points) {
    if (cube.point_indices.empty()) {
        cube.status = CubeStatus::Empty;
        cube.assigned_class = -1;
        return cube.status;
    }
    int first = points[cube.point_indices[0]].label;
    bool uniform = true;
    for (int idx : cube.point_indices) {
        if (points[idx].label != first) { uniform = false; break; }
    }
    if (uniform) {
        cube.status = CubeStatus::Homogeneous;
        cube.assigned_class = first;
    } else {
        cube.status = CubeStatus::Inhomogeneous;
        cube.assigned_class = -1;
    }
    return cube.status;
}

namespace {

int majority_class(const Hypercube& cube, const std::vector<LabeledPoint>& points,
                   int n_classes) {
    std::vector<long> counts(n_classes, 0);
    for (int idx : cube.point_indices) ++counts[points[idx].label];
    int best = 0;
    for (int c = 1; c < n_classes; ++c)
        if (counts[c] > counts[best]) best = c;  // ties keep the lowest index
    return best;
}

bool has_coincident_cross_class(const Hypercube& cube,
                                const std::vector<LabeledPoint>& points) {
    const auto& idx = cube.point_indices;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        for (std::size_t j = i + 1; j < idx.size(); ++j) {
            if (points[idx[i]].label == points[idx[j]].label) continue;
            if (points[idx[i]].coords == points[idx[j]].coords) return true;
        }
    }
    return false;
}

}  // namespace

Cover build_cover(const std::vector<LabeledPoint>& points, const CoverConfig& config) {
    if (points.empty()) throw std::invalid_argument("build_cover: no points");
    if (config.min_length <= 0.0 || config.max_aspect_ratio < 1.0 ||
        config.effective_epsilon() <= 0.0)
        throw std::invalid_argument("build_cover: invalid config");

    int n_classes = 0;
    for (const auto& p : points) n_classes = std::max(n_classes, p.label + 1);
    {
        bool multi = false;
        for (std::size_t i = 1; i < points.size(); ++i)
            if (points[i].label != points[0].label) { multi = true; break; }
        if (!multi) throw std::invalid_argument("build_cover: nothing to separate (single class)");
    }
    for (const auto& p : points) {
        bool sane = true;
        for (double v : p.coords)
            if (v < -10.0 || v > 10.0) sane = false;
        if (!sane) {
            std::fprintf(stderr,
                         "warning: coordinates outside [-10,10]; did you normalize?\n");
            break;
        }
    }

    Cover cover;
    cover.config = config;
    cover.n_dims = static_cast<int>(points[0].coords.size());
    cover.n_classes = n_classes;
    cover.bounding_cube = bounding_box(points);

    Rng rng(config.rng_seed);
    bool warned_coincident = false;

    Hypercube root = cover.bounding_cube;
    root.point_indices.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
        root.point_indices[i] = static_cast<int>(i);
    root.n_points = static_cast<int>(points.size());

    // LIFO work list holds only inhomogeneous cubes
    std::vector<Hypercube> work;
    classify_cube(root, points);
    if (root.status != CubeStatus::Inhomogeneous)
        throw std::logic_error("build_cover: multi-class root must be inhomogeneous");
    work.push_back(std::move(root));

    auto settle = [&](Hypercube&& cube) {
        // route a freshly classified cube to leaves or back onto the work list
        if (cube.status == CubeStatus::Inhomogeneous)
            work.push_back(std::move(cube));
        else
            cover.leaves.push_back(std::move(cube));
    };

    while (!work.empty()) {
        Hypercube cube = std::move(work.back());
        work.pop_back();

        std::vector<int> axes = feasible_axes(cube, config);
        if (axes.empty()) {
            cube.status = CubeStatus::Violating;
            cube.assigned_class = majority_class(cube, points, n_classes);
            if (!warned_coincident && has_coincident_cross_class(cube, points)) {
                std::fprintf(stderr,
                             "warning: coincident cross-class points; cube kept with "
                             "majority label\n");
                warned_coincident = true;
            }
            cover.leaves.push_back(std::move(cube));
            continue;
        }

        auto scores = score_axes(cube, points, axes, n_classes, config.score_mode);
        int axis = select_bisection_axis(scores, rng);
        auto [a, b] = bisect(cube, axis, points);

        // split-axis extent >= l and aspect <= r* hold by construction of
        // feasible_axes; cheap recheck while the invariant is fresh
        classify_cube(a, points);
        classify_cube(b, points);
        settle(std::move(a));
        settle(std::move(b));
    }

    if (config.fill_porosity) fill(cover);
    return cover;
}

CoverConfig recommended_config(const std::vector<LabeledPoint>& points,
                               std::uint64_t seed) {
    double l_star = min_interclass_distance(points);
    double l = std::clamp(l_star / 2.0, 0.1, 0.25);
    CoverConfig cfg;
    cfg.min_length = l;
    cfg.max_aspect_ratio = 4.0;
    cfg.rng_seed = seed;
    cfg.epsilon = 2.0 * l;
    cfg.fill_porosity = true;
    cfg.score_mode = ScoreMode::ExcludeEmptyPairs;
    return cfg;
}

std::size_t UniformCoverOracle::n_cells() const {
    std::size_t k = 1;
    for (int b : bins) k *= static_cast<std::size_t>(b);
    return k;
}

std::optional<std::size_t> UniformCoverOracle::cell_index(std::span<const double> x) const {
    std::size_t idx = 0;
    for (std::size_t j = 0; j < bins.size(); ++j) {
        if (x[j] < domain.lower[j] || x[j] >= domain.upper[j]) return std::nullopt;
        int b = static_cast<int>((x[j] - domain.lower[j]) / cell_edge[j]);
        b = std::min(b, bins[j] - 1);  // guard the top cell against fp round-up
        idx = idx * static_cast<std::size_t>(bins[j]) + static_cast<std::size_t>(b);
    }
    return idx;
}

std::optional<int> UniformCoverOracle::classify(std::span<const double> x) const {
    auto idx = cell_index(x);
    if (!idx) return std::nullopt;
    return cell_class[*idx];
}

bool UniformCoverOracle::any_ambiguous() const {
    for (int c : cell_class)
        if (c == kAmbiguous) return true;
    return false;
}

UniformCoverOracle uniform_cover_oracle(const std::vector<LabeledPoint>& points, double l) {
    if (points.empty()) throw std::invalid_argument("uniform_cover_oracle: no points");
    if (l <= 0.0) throw std::invalid_argument("uniform_cover_oracle: l must be positive");
    const std::size_t n = points[0].coords.size();
    if (n > 3) throw std::runtime_error("uniform cover intractable: n > 3");

    UniformCoverOracle o;
    o.domain = bounding_box(points);
    double cells = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double extent = o.domain.extent(j);
        int b = static_cast<int>(std::ceil(extent / l));
        o.bins.push_back(std::max(1, b));
        o.cell_edge.push_back(extent / o.bins.back());
        cells *= o.bins.back();
    }
    if (cells > 1e6) throw std::runtime_error("uniform cover intractable: cell count");

    for (const auto& p : points) o.n_classes = std::max(o.n_classes, p.label + 1);
    o.cell_class.assign(static_cast<std::size_t>(cells), UniformCoverOracle::kEmpty);
    for (const auto& p : points) {
        auto idx = o.cell_index(p.coords);
        if (!idx) throw std::logic_error("uniform_cover_oracle: point escaped domain");
        int& cls = o.cell_class[*idx];
        if (cls == UniformCoverOracle::kEmpty)
            cls = p.label;
        else if (cls != p.label)
            cls = UniformCoverOracle::kAmbiguous;
    }
    return o;
}

}  // namespace hypercover
