#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <stdexcept>
#include <vector>

#include "hypercover/cover.hpp"
#include "hypercover/data.hpp"
#include "hypercover/geometry.hpp"
#include "hypercover/json_io.hpp"
#include "hypercover/network.hpp"

namespace py = pybind11;
using namespace hypercover;

namespace {

std::vector<LabeledPoint> zip_points(const std::vector<std::vector<double>>& coords,
                                     const std::vector<int>& labels) {
    if (coords.size() != labels.size())
        throw std::invalid_argument("coords and labels must have the same length");
    std::vector<LabeledPoint> pts;
    pts.reserve(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) pts.push_back({coords[i], labels[i]});
    return pts;
}

Eigen::VectorXd to_vec(const std::vector<double>& x) {
    return Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<long>(x.size()));
}

}  // namespace

PYBIND11_MODULE(_hypercover, m) {
    m.doc() = "hypercube cover classifier: build, compile to a ReLU net, evaluate";

    py::enum_<CubeStatus>(m, "CubeStatus")
        .value("Homogeneous", CubeStatus::Homogeneous)
        .value("Inhomogeneous", CubeStatus::Inhomogeneous)
        .value("Violating", CubeStatus::Violating)
        .value("Empty", CubeStatus::Empty)
        .value("Filled", CubeStatus::Filled);

    py::enum_<ScoreMode>(m, "ScoreMode")
        .value("LiteralZero", ScoreMode::LiteralZero)
        .value("ExcludeEmptyPairs", ScoreMode::ExcludeEmptyPairs);

    py::class_<CoverConfig>(m, "CoverConfig")
        .def(py::init<>())
        .def_readwrite("min_length", &CoverConfig::min_length)
        .def_readwrite("max_aspect_ratio", &CoverConfig::max_aspect_ratio)
        .def_readwrite("rng_seed", &CoverConfig::rng_seed)
        .def_readwrite("epsilon", &CoverConfig::epsilon)
        .def_readwrite("fill_porosity", &CoverConfig::fill_porosity)
        .def_readwrite("score_mode", &CoverConfig::score_mode)
        .def("effective_epsilon", &CoverConfig::effective_epsilon);

    py::class_<Hypercube>(m, "Hypercube")
        .def_readonly("lower", &Hypercube::lower)
        .def_readonly("upper", &Hypercube::upper)
        .def_readonly("status", &Hypercube::status)
        .def_readonly("assigned_class", &Hypercube::assigned_class)
        .def_readonly("n_points", &Hypercube::n_points)
        .def("contains",
             [](const Hypercube& h, const std::vector<double>& x) { return h.contains(x); })
        .def("volume", &Hypercube::volume)
        .def("aspect_ratio", &Hypercube::aspect_ratio);

    py::class_<Cover>(m, "Cover")
        .def_readonly("n_dims", &Cover::n_dims)
        .def_readonly("n_classes", &Cover::n_classes)
        .def_readonly("config", &Cover::config)
        .def_readonly("leaves", &Cover::leaves)
        .def("count", &Cover::count)
        .def("classify",
             [](const Cover& c, const std::vector<double>& x) {
                 return geometric_classify(c, x);
             },
             "leaf class at x, or None outside the covered domain")
        .def("to_json", [](const Cover& c) { return export_cover(c); });

    py::class_<CompiledNetwork>(m, "CompiledNetwork")
        .def_readonly("n_inputs", &CompiledNetwork::n_inputs)
        .def_readonly("n_classes", &CompiledNetwork::n_classes)
        .def_readonly("epsilon", &CompiledNetwork::epsilon)
        .def_readonly("class_blocks", &CompiledNetwork::class_blocks)
        .def_property_readonly("layer_shapes",
             [](const CompiledNetwork& n) {
                 std::vector<std::pair<long, long>> shapes;
                 for (const auto& l : n.layers)
                     shapes.emplace_back(l.weights.rows(), l.weights.cols());
                 return shapes;
             })
        .def("forward",
             [](const CompiledNetwork& n, const std::vector<double>& x) {
                 Prediction p = forward(n, to_vec(x));
                 std::vector<double> scores(p.scores.data(), p.scores.data() + p.scores.size());
                 return py::make_tuple(scores, p.predicted);
             },
             "returns (softmax scores, predicted class)")
        .def("to_json", [](const CompiledNetwork& n) { return export_network(n); });

    py::class_<BoxEvaluator>(m, "BoxEvaluator")
        .def(py::init<const Cover&, double>(), py::arg("cover"), py::arg("epsilon") = 0.0)
        .def_property_readonly("n_inputs", &BoxEvaluator::n_inputs)
        .def_property_readonly("n_classes", &BoxEvaluator::n_classes)
        .def_property_readonly("n_cubes", &BoxEvaluator::n_cubes)
        .def_property_readonly("epsilon", &BoxEvaluator::epsilon)
        .def("forward",
             [](const BoxEvaluator& b, const std::vector<double>& x) {
                 Prediction p = b.forward(x);
                 std::vector<double> scores(p.scores.data(), p.scores.data() + p.scores.size());
                 return py::make_tuple(scores, p.predicted);
             },
             "returns (softmax scores, predicted class) without materializing dense layers");

    m.def("build_cover",
          [](const std::vector<std::vector<double>>& coords, const std::vector<int>& labels,
             const CoverConfig& config) { return build_cover(zip_points(coords, labels), config); },
          py::arg("coords"), py::arg("labels"), py::arg("config"));

    m.def("recommended_config",
          [](const std::vector<std::vector<double>>& coords, const std::vector<int>& labels,
             std::uint64_t seed) { return recommended_config(zip_points(coords, labels), seed); },
          py::arg("coords"), py::arg("labels"), py::arg("seed") = 0);

    m.def("compile",
          [](const Cover& cover, double epsilon) { return compile(cover, epsilon); },
          py::arg("cover"), py::arg("epsilon") = 0.0,
          "compile a cover's box inequalities into an explicit ReLU network");

    m.def("import_cover", &import_cover, py::arg("json_text"));
    m.def("import_network", &import_network, py::arg("json_text"));

    m.def("min_interclass_distance",
          [](const std::vector<std::vector<double>>& coords, const std::vector<int>& labels) {
              return min_interclass_distance(zip_points(coords, labels));
          },
          py::arg("coords"), py::arg("labels"));

    m.def("pair_homogeneity", &pair_homogeneity, py::arg("count_a"), py::arg("count_b"));

    m.def("pca",
          [](const std::vector<std::vector<double>>& coords, int d) {
              Dataset ds;
              for (const auto& c : coords) ds.points.push_back({c, 0});
              ds.class_names = {"0"};
              PcaModel pm = pca_fit(ds, d);
              Dataset out = pca_transform(pm, ds);
              std::vector<std::vector<double>> proj;
              proj.reserve(out.points.size());
              for (const auto& p : out.points) proj.push_back(p.coords);
              return proj;
          },
          py::arg("coords"), py::arg("d"),
          "project rows onto their top d principal axes");
}
