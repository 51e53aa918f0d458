#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "hypercover/cover.hpp"
#include "hypercover/network.hpp"
#include "test_util.hpp"

using namespace hypercover;
using test_util::kInf;
using test_util::pt;

namespace {

Hypercube with_points(Hypercube cube, std::size_t n_points) {
    cube.point_indices.resize(n_points);
    std::iota(cube.point_indices.begin(), cube.point_indices.end(), 0);
    cube.n_points = static_cast<int>(n_points);
    return cube;
}

}  // namespace

TEST_CASE("min_interclass_distance basics") {
    CHECK(min_interclass_distance({pt({0, 0}, 0), pt({3, 4}, 1)}) == doctest::Approx(5.0));
    CHECK(min_interclass_distance({pt({0, 0}, 0), pt({1, 0}, 0), pt({1, 0}, 1)}) == 0.0);
    CHECK_THROWS_WITH_AS(min_interclass_distance({pt({0, 0}, 0), pt({1, 1}, 0)}),
                         doctest::Contains("l* undefined"), std::invalid_argument);
}

TEST_CASE("min_interclass_distance matches an independent pairwise recomputation") {
    const auto& data = test_util::iris_pca(2);
    double expect = test_util::kInf;
    for (std::size_t i = 0; i < data.points.size(); ++i)
        for (std::size_t j = i + 1; j < data.points.size(); ++j) {
            if (data.points[i].label == data.points[j].label) continue;
            double s = 0.0;
            for (std::size_t k = 0; k < data.points[i].coords.size(); ++k) {
                double d = data.points[i].coords[k] - data.points[j].coords[k];
                s += d * d;
            }
            expect = std::min(expect, std::sqrt(s));
        }
    CHECK(min_interclass_distance(data.points) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(expect > 0.0);
}

TEST_CASE("pair_homogeneity") {
    CHECK(pair_homogeneity(0, 0) == 0.0);
    CHECK(pair_homogeneity(5, 5) == 0.0);
    CHECK(pair_homogeneity(8, 0) == 1.0);
    CHECK(pair_homogeneity(6, 2) == doctest::Approx(0.5));
    // symmetric, in [0,1], and 1 exactly when one count is zero and the other not
    for (long a = 0; a <= 6; ++a)
        for (long b = 0; b <= 6; ++b) {
            double h = pair_homogeneity(a, b);
            CHECK(h == pair_homogeneity(b, a));
            CHECK(h >= 0.0);
            CHECK(h <= 1.0);
            CHECK((h == 1.0) == ((a == 0) != (b == 0)));
        }
}

TEST_CASE("daughter_min_homogeneity, literal zero for vacant pairs") {
    CHECK(daughter_min_homogeneity({4, 4}) == 0.0);
    CHECK(daughter_min_homogeneity({4, 0}) == 1.0);
    // the (0,0) class pair contributes 0 under the literal rule
    CHECK(daughter_min_homogeneity({4, 0, 0}) == 0.0);
    CHECK_THROWS_AS(daughter_min_homogeneity({4}), std::invalid_argument);
}

TEST_CASE("daughter_min_homogeneity, exclude-empty-pairs mode") {
    CHECK(daughter_min_homogeneity({4, 0, 0}, ScoreMode::ExcludeEmptyPairs) == 1.0);
    CHECK(daughter_min_homogeneity({4, 4, 0}, ScoreMode::ExcludeEmptyPairs) == 0.0);
    CHECK(daughter_min_homogeneity({6, 2}, ScoreMode::ExcludeEmptyPairs) ==
          doctest::Approx(0.5));
    // a pointless daughter scores 1: segregated by vacancy
    CHECK(daughter_min_homogeneity({0, 0, 0}, ScoreMode::ExcludeEmptyPairs) == 1.0);
}

TEST_CASE("feasible_axes honors the extent floor") {
    Hypercube unit = test_util::box({0, 0}, {1, 1}, CubeStatus::Inhomogeneous);
    CoverConfig cc;
    cc.max_aspect_ratio = kInf;

    cc.min_length = 0.4;
    CHECK(feasible_axes(unit, cc) == std::vector<int>{0, 1});

    cc.min_length = 0.6;
    CHECK(feasible_axes(unit, cc).empty());
}

TEST_CASE("feasible_axes honors the daughter aspect-ratio cap") {
    Hypercube wide = test_util::box({0, 0}, {4, 1}, CubeStatus::Inhomogeneous);
    CoverConfig cc;
    cc.min_length = 0.1;
    cc.max_aspect_ratio = 2.0;
    // axis 0 daughters have breadths {2,1} (r=2); axis 1 gives {4,0.5} (r=8)
    CHECK(feasible_axes(wide, cc) == std::vector<int>{0});
}

TEST_CASE("score_axes hand traces") {
    Hypercube unit =
        with_points(test_util::box({0, 0}, {1, 1}, CubeStatus::Inhomogeneous), 2);
    std::vector<LabeledPoint> pts = {pt({0.2, 0.5}, 0), pt({0.8, 0.5}, 1)};
    auto scores = score_axes(unit, pts, {0, 1}, 2);
    REQUIRE(scores.size() == 2);
    CHECK(scores[0].axis == 0);
    CHECK(scores[0].score == doctest::Approx(1.0));
    CHECK(scores[1].axis == 1);
    // both points land in the upper daughter (y = 0.5 = mid), which stays
    // mixed, and the lower daughter's vacant pair scores 0 literally
    CHECK(scores[1].score == doctest::Approx(0.0));
}

TEST_CASE("score_axes scores a single-class cube 1.0 on every axis") {
    Hypercube unit =
        with_points(test_util::box({0, 0}, {1, 1}, CubeStatus::Inhomogeneous), 2);
    std::vector<LabeledPoint> pts = {pt({0.2, 0.2}, 0), pt({0.8, 0.8}, 0)};
    for (const auto& s : score_axes(unit, pts, {0, 1}, 2))
        CHECK(s.score == doctest::Approx(1.0));
}

TEST_CASE("score_axes scores the XOR layout 0.0 on both axes") {
    Hypercube unit =
        with_points(test_util::box({0, 0}, {1, 1}, CubeStatus::Inhomogeneous), 4);
    std::vector<LabeledPoint> pts = {pt({0.25, 0.25}, 0), pt({0.75, 0.75}, 0),
                                     pt({0.25, 0.75}, 1), pt({0.75, 0.25}, 1)};
    for (const auto& s : score_axes(unit, pts, {0, 1}, 2))
        CHECK(s.score == doctest::Approx(0.0));
}

TEST_CASE("score_axes rejects an empty axis set") {
    Hypercube unit =
        with_points(test_util::box({0, 0}, {1, 1}, CubeStatus::Inhomogeneous), 1);
    std::vector<LabeledPoint> pts = {pt({0.5, 0.5}, 0)};
    CHECK_THROWS_AS(score_axes(unit, pts, {}, 2), std::invalid_argument);
}

TEST_CASE("select_bisection_axis prefers the unique maximum") {
    Rng rng(1);
    CHECK(select_bisection_axis({{0, 1.0}, {1, 0.0}}, rng) == 0);
    CHECK(select_bisection_axis({{2, 0.0}}, rng) == 2);
}

TEST_CASE("select_bisection_axis breaks ties reproducibly and covers all tied axes") {
    std::vector<AxisScore> tied = {{0, 0.5}, {1, 0.5}};
    Rng a(123), b(123);
    CHECK(select_bisection_axis(tied, a) == select_bisection_axis(tied, b));

    std::set<int> seen;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        Rng rng(seed);
        seen.insert(select_bisection_axis(tied, rng));
    }
    CHECK(seen == std::set<int>{0, 1});
}

TEST_CASE("bisect splits at the midpoint and conserves points and volume") {
    Hypercube cube =
        with_points(test_util::box({0, 0}, {1, 4}, CubeStatus::Inhomogeneous), 3);
    std::vector<LabeledPoint> pts = {pt({0.5, 1.0}, 0), pt({0.5, 2.0}, 1),
                                     pt({0.5, 3.0}, 1)};
    auto [a, b] = bisect(cube, 1, pts);
    CHECK(a.lower == std::vector<double>{0, 0});
    CHECK(a.upper == std::vector<double>{1, 2});
    CHECK(b.lower == std::vector<double>{0, 2});
    CHECK(b.upper == std::vector<double>{1, 4});
    CHECK(a.volume() + b.volume() == doctest::Approx(cube.volume()));
    // the point at exactly the midpoint goes to the upper daughter
    CHECK(a.point_indices == std::vector<int>{0});
    CHECK(b.point_indices == std::vector<int>{1, 2});

    CHECK_THROWS_AS(bisect(cube, 2, pts), std::invalid_argument);
}

TEST_CASE("classify_cube") {
    std::vector<LabeledPoint> pts = {pt({0.1}, 1), pt({0.2}, 1), pt({0.3}, 0)};

    Hypercube empty = test_util::box({0}, {1}, CubeStatus::Inhomogeneous);
    CHECK(classify_cube(empty, pts) == CubeStatus::Empty);

    Hypercube pure = test_util::box({0}, {1}, CubeStatus::Inhomogeneous);
    pure.point_indices = {0, 1};
    CHECK(classify_cube(pure, pts) == CubeStatus::Homogeneous);
    CHECK(pure.assigned_class == 1);

    Hypercube mixed = test_util::box({0}, {1}, CubeStatus::Inhomogeneous);
    mixed.point_indices = {0, 2};
    CHECK(classify_cube(mixed, pts) == CubeStatus::Inhomogeneous);
}

TEST_CASE("build_cover separates two 1D clusters with a single bisection") {
    std::vector<LabeledPoint> pts = {pt({0.1}, 0), pt({0.2}, 0), pt({0.8}, 1),
                                     pt({0.9}, 1)};
    CoverConfig cc;
    cc.min_length = 0.05;
    Cover cover = build_cover(pts, cc);

    REQUIRE(cover.leaves.size() == 2);
    CHECK(cover.count(CubeStatus::Homogeneous) == 2);
    CHECK(cover.count(CubeStatus::Violating) == 0);
    CHECK(cover.count(CubeStatus::Empty) == 0);
    // split lands at the bounding-box midpoint, essentially 0.5
    auto lo = cover.find_leaf(std::vector<double>{0.1});
    auto hi = cover.find_leaf(std::vector<double>{0.9});
    REQUIRE(lo.has_value());
    REQUIRE(hi.has_value());
    CHECK(cover.leaves[*lo].upper[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(cover.leaves[*lo].assigned_class == 0);
    CHECK(cover.leaves[*hi].lower[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(cover.leaves[*hi].assigned_class == 1);
}

TEST_CASE("build_cover classifies the XOR layout perfectly") {
    std::vector<LabeledPoint> pts = {pt({0.25, 0.25}, 0), pt({0.75, 0.75}, 0),
                                     pt({0.25, 0.75}, 1), pt({0.75, 0.25}, 1)};
    CoverConfig cc;
    cc.min_length = 0.1;
    cc.max_aspect_ratio = kInf;
    cc.rng_seed = 3;
    Cover cover = build_cover(pts, cc);
    for (const auto& p : pts) {
        auto cls = geometric_classify(cover, p.coords);
        REQUIRE(cls.has_value());
        CHECK(*cls == p.label);
    }
}

TEST_CASE("build_cover reaches 100% training accuracy on a real split") {
    // resolution below l* guarantees no violating cube can survive
    const auto& cover = test_util::iris2_cover();
    const auto& train = test_util::iris2_split().train;
    CHECK(cover.count(CubeStatus::Violating) == 0);
    for (const auto& p : train.points) {
        auto cls = geometric_classify(cover, p.coords);
        REQUIRE(cls.has_value());
        CHECK(*cls == p.label);
    }
}

TEST_CASE("build_cover invariants: tiling, point conservation, homogeneity") {
    const auto& cover = test_util::iris2_cover();
    const auto& train = test_util::iris2_split().train;

    double leaf_volume = 0.0;
    for (const auto& leaf : cover.leaves) leaf_volume += leaf.volume();
    CHECK(leaf_volume ==
          doctest::Approx(cover.bounding_cube.volume()).epsilon(1e-9));

    std::vector<int> seen;
    for (const auto& leaf : cover.leaves)
        seen.insert(seen.end(), leaf.point_indices.begin(), leaf.point_indices.end());
    std::sort(seen.begin(), seen.end());
    std::vector<int> expect(train.points.size());
    std::iota(expect.begin(), expect.end(), 0);
    CHECK(seen == expect);

    for (const auto& leaf : cover.leaves) {
        if (leaf.status != CubeStatus::Homogeneous) continue;
        for (int idx : leaf.point_indices)
            CHECK(train.points[idx].label == leaf.assigned_class);
    }

    // every random probe sits in exactly one leaf
    Rng rng(99);
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> x(2);
        for (int j = 0; j < 2; ++j)
            x[j] = cover.bounding_cube.lower[j] +
                   rng.uniform01() * cover.bounding_cube.extent(j);
        int hits = 0;
        for (const auto& leaf : cover.leaves) hits += leaf.contains(x) ? 1 : 0;
        CHECK(hits == 1);
    }
}

TEST_CASE("build_cover is deterministic for a fixed seed") {
    std::vector<LabeledPoint> pts = test_util::blobs3();
    CoverConfig cc;
    cc.min_length = 0.05;
    cc.rng_seed = 11;
    Cover a = build_cover(pts, cc);
    Cover b = build_cover(pts, cc);
    REQUIRE(a.leaves.size() == b.leaves.size());
    for (std::size_t i = 0; i < a.leaves.size(); ++i) {
        CHECK(a.leaves[i].lower == b.leaves[i].lower);
        CHECK(a.leaves[i].upper == b.leaves[i].upper);
        CHECK(a.leaves[i].status == b.leaves[i].status);
        CHECK(a.leaves[i].assigned_class == b.leaves[i].assigned_class);
    }
}

TEST_CASE("build_cover rejects degenerate input") {
    CHECK_THROWS_AS(build_cover({}, CoverConfig{}), std::invalid_argument);
    CHECK_THROWS_WITH_AS(build_cover({pt({0.1}, 0), pt({0.9}, 0)}, CoverConfig{}),
                         doctest::Contains("nothing to separate"),
                         std::invalid_argument);
    CoverConfig bad;
    bad.min_length = 0.0;
    CHECK_THROWS_AS(build_cover({pt({0.1}, 0), pt({0.9}, 1)}, bad),
                    std::invalid_argument);
}

TEST_CASE("build_cover assigns violating cubes their majority class") {
    // coincident cross-class points can never be separated; the shared
    // cube must end violating with the majority label
    std::vector<LabeledPoint> pts = {pt({0.5, 0.5}, 1), pt({0.5, 0.5}, 1),
                                     pt({0.5, 0.5}, 0), pt({0.1, 0.1}, 0),
                                     pt({0.9, 0.9}, 0)};
    CoverConfig cc;
    cc.min_length = 0.05;
    cc.fill_porosity = false;
    Cover cover = build_cover(pts, cc);
    REQUIRE(cover.count(CubeStatus::Violating) >= 1);
    for (const auto* leaf : cover.by_status(CubeStatus::Violating))
        CHECK(leaf->assigned_class == 1);
}

TEST_CASE("violating-cube majority ties break toward the lowest class") {
    std::vector<LabeledPoint> pts = {pt({0.5, 0.5}, 2), pt({0.5, 0.5}, 1),
                                     pt({0.1, 0.1}, 0), pt({0.9, 0.9}, 0)};
    CoverConfig cc;
    cc.min_length = 0.05;
    cc.fill_porosity = false;
    Cover cover = build_cover(pts, cc);
    REQUIRE(cover.count(CubeStatus::Violating) == 1);
    CHECK(cover.by_status(CubeStatus::Violating)[0]->assigned_class == 1);
}

TEST_CASE("recommended_config applies the tuned defaults") {
    const auto& train = test_util::iris2_split().train;
    CoverConfig cc = recommended_config(train.points, 7);
    double lstar = min_interclass_distance(train.points);
    CHECK(cc.min_length == doctest::Approx(std::clamp(lstar / 2.0, 0.1, 0.25)));
    CHECK(cc.max_aspect_ratio == doctest::Approx(4.0));
    CHECK(cc.epsilon == doctest::Approx(2.0 * cc.min_length));
    CHECK(cc.rng_seed == 7);
    CHECK(cc.score_mode == ScoreMode::ExcludeEmptyPairs);
}

TEST_CASE("uniform_cover_oracle partitions a 1D pair into two labeled cells") {
    std::vector<LabeledPoint> pts = {pt({0.1}, 0), pt({0.9}, 1)};
    UniformCoverOracle oracle = uniform_cover_oracle(pts, 0.5);
    CHECK(oracle.n_cells() == 2);
    std::vector<double> left = {0.3}, right = {0.7};
    CHECK(oracle.classify(left) == 0);
    CHECK(oracle.classify(right) == 1);
    CHECK_FALSE(oracle.any_ambiguous());
}

TEST_CASE("uniform_cover_oracle cell count is the product of per-axis bins") {
    std::vector<LabeledPoint> pts = test_util::blobs3();
    UniformCoverOracle oracle = uniform_cover_oracle(pts, 0.3);
    REQUIRE(oracle.bins.size() == 2);
    CHECK(oracle.n_cells() ==
          static_cast<std::size_t>(oracle.bins[0]) *
              static_cast<std::size_t>(oracle.bins[1]));
}

TEST_CASE("uniform_cover_oracle has no ambiguous cell below l*") {
    std::vector<LabeledPoint> pts = test_util::blobs3();
    double lstar = min_interclass_distance(pts);
    UniformCoverOracle oracle = uniform_cover_oracle(pts, lstar / 2.0);
    CHECK_FALSE(oracle.any_ambiguous());
}

TEST_CASE("uniform_cover_oracle guards against blowup") {
    std::vector<LabeledPoint> pts4d = {pt({0, 0, 0, 0}, 0), pt({1, 1, 1, 1}, 1)};
    CHECK_THROWS_WITH_AS(uniform_cover_oracle(pts4d, 0.5),
                         doctest::Contains("intractable"), std::runtime_error);
    std::vector<LabeledPoint> pts3d = {pt({0, 0, 0}, 0), pt({1, 1, 1}, 1)};
    CHECK_THROWS_AS(uniform_cover_oracle(pts3d, 1e-3), std::runtime_error);
}

TEST_CASE("cover and uniform oracle agree on training points below l*") {
    std::vector<LabeledPoint> pts = test_util::blobs3();
    double lstar = min_interclass_distance(pts);
    CoverConfig cc;
    cc.min_length = lstar / 2.0;
    cc.max_aspect_ratio = kInf;
    cc.fill_porosity = false;
    cc.rng_seed = 5;
    Cover cover = build_cover(pts, cc);
    UniformCoverOracle oracle = uniform_cover_oracle(pts, cc.min_length);
    for (const auto& p : pts) {
        auto a = geometric_classify(cover, p.coords);
        auto b = oracle.classify(p.coords);
        REQUIRE(a.has_value());
        REQUIRE(b.has_value());
        CHECK(*a == *b);
    }
}
