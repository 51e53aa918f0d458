#pragma once

#include <limits>
#include <string>
#include <vector>

#include "hypercover/cover.hpp"
#include "hypercover/data.hpp"
#include "hypercover/geometry.hpp"

namespace test_util {

inline hypercover::LabeledPoint pt(std::vector<double> coords, int label) {
    return {std::move(coords), label};
}

inline hypercover::Hypercube box(std::vector<double> lower, std::vector<double> upper,
                                 hypercover::CubeStatus status,
                                 int assigned_class = -1) {
    hypercover::Hypercube c;
    c.lower = std::move(lower);
    c.upper = std::move(upper);
    c.status = status;
    c.assigned_class = assigned_class;
    return c;
}

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Iris projected to d principal components, cached per dimensionality.
inline const hypercover::Dataset& iris_pca(int d) {
    static std::vector<hypercover::Dataset> cache(5);
    if (cache[d].points.empty()) {
        hypercover::Dataset raw = hypercover::load_csv("data/iris.csv");
        cache[d] = hypercover::pca_transform(hypercover::pca_fit(raw, d), raw);
    }
    return cache[d];
}

/// Normalized iris 2D training split used by several suites.
struct IrisSplit {
    hypercover::Dataset train;
    hypercover::Dataset eval;
};

inline const IrisSplit& iris2_split(std::uint64_t seed = 7) {
    static IrisSplit s;
    static std::uint64_t cached_seed = ~0ull;
    if (cached_seed != seed) {
        auto [train, eval] = hypercover::split(iris_pca(2), {0.7, seed});
        auto [ntrain, maps] = hypercover::normalize(train);
        s.train = ntrain;
        s.eval = hypercover::apply_normalization(maps, eval);
        cached_seed = seed;
    }
    return s;
}

/// Iris 2D cover built with a sub-l* resolution so no violating cubes
/// appear; cached because several suites reuse it.
inline const hypercover::Cover& iris2_cover() {
    static hypercover::Cover cover;
    if (cover.leaves.empty()) {
        const auto& split = iris2_split();
        hypercover::CoverConfig cc;
        cc.min_length = hypercover::min_interclass_distance(split.train.points) / 2.0;
        cc.max_aspect_ratio = 1e18;  // effectively unconstrained, JSON-exact
        cc.rng_seed = 7;
        cc.fill_porosity = true;
        cover = hypercover::build_cover(split.train.points, cc);
    }
    return cover;
}

/// Three well-separated 2D blobs, 60 points each, deterministic.
inline std::vector<hypercover::LabeledPoint> blobs3(std::uint64_t seed = 42,
                                                    double spread = 0.16) {
    hypercover::Rng rng(seed);
    std::vector<hypercover::LabeledPoint> pts;
    const double cx[3] = {0.2, 0.8, 0.5};
    const double cy[3] = {0.2, 0.3, 0.85};
    for (int c = 0; c < 3; ++c)
        for (int i = 0; i < 60; ++i)
            pts.push_back({{cx[c] + spread * (rng.uniform01() - 0.5),
                            cy[c] + spread * (rng.uniform01() - 0.5)},
                           c});
    return pts;
}

}  // namespace test_util
