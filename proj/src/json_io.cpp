#include "hypercover/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hypercover {

using nlohmann::json;

std::string format_real(double v) {
    // JSON has no infinity literal; the largest finite double compares
    // identically everywhere a bound like r_star is consumed
    if (std::isinf(v)) v = std::copysign(std::numeric_limits<double>::max(), v);
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

void append_real_array(std::string& out, const std::vector<double>& vals) {
    out += '[';
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) out += ',';
        out += format_real(vals[i]);
    }
    out += ']';
}

void append_real_array(std::string& out, const double* vals, std::size_t count) {
    out += '[';
    for (std::size_t i = 0; i < count; ++i) {
        if (i) out += ',';
        out += format_real(vals[i]);
    }
    out += ']';
}

const json& require(const json& j, const char* key, const char* context) {
    auto it = j.find(key);
    if (it == j.end())
        throw std::runtime_error(std::string(context) + ": missing field '" + key + "'");
    return *it;
}

json parse_or_throw(const std::string& text, const char* context) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw std::runtime_error(std::string(context) + ": malformed JSON document");
    return j;
}

CubeStatus status_from_string(const std::string& s, const char* context) {
    if (s == "homogeneous") return CubeStatus::Homogeneous;
    if (s == "violating") return CubeStatus::Violating;
    if (s == "empty") return CubeStatus::Empty;
    if (s == "filled") return CubeStatus::Filled;
    throw std::runtime_error(std::string(context) + ": unknown status '" + s + "'");
}

Activation activation_from_string(const std::string& s, const char* context) {
    if (s == "relu") return Activation::Relu;
    if (s == "identity") return Activation::Identity;
    if (s == "softmax") return Activation::Softmax;
    throw std::runtime_error(std::string(context) + ": unknown activation '" + s + "'");
}

}  // namespace

std::string export_cover(const Cover& cover) {
    std::string out;
    out.reserve(128 + cover.leaves.size() * (48 * cover.n_dims + 64));
    out += "{\"n_dims\":" + std::to_string(cover.n_dims);
    out += ",\"n_classes\":" + std::to_string(cover.n_classes);
    out += ",\"config\":{\"l\":" + format_real(cover.config.min_length);
    out += ",\"r_star\":" + format_real(cover.config.max_aspect_ratio);
    out += ",\"epsilon\":" + format_real(cover.config.effective_epsilon());
    out += ",\"seed\":" + std::to_string(cover.config.rng_seed);
    out += "},\"cubes\":[";
    for (std::size_t i = 0; i < cover.leaves.size(); ++i) {
        const Hypercube& c = cover.leaves[i];
        if (i) out += ',';
        out += "{\"lower\":";
        append_real_array(out, c.lower);
        out += ",\"upper\":";
        append_real_array(out, c.upper);
        out += ",\"status\":\"" + to_string(c.status) + "\"";
        out += ",\"class\":";
        out += c.assigned_class >= 0 ? std::to_string(c.assigned_class) : "null";
        out += ",\"n_points\":" + std::to_string(c.n_points);
        out += '}';
    }
    out += "]}";
    return out;
}

Cover import_cover(const std::string& json_text) {
    const char* ctx = "cover JSON";
    json j = parse_or_throw(json_text, ctx);

    Cover cover;
    cover.n_dims = require(j, "n_dims", ctx).get<int>();
    cover.n_classes = require(j, "n_classes", ctx).get<int>();
    const json& cfg = require(j, "config", ctx);
    cover.config.min_length = require(cfg, "l", ctx).get<double>();
    cover.config.max_aspect_ratio = require(cfg, "r_star", ctx).get<double>();
    cover.config.epsilon = require(cfg, "epsilon", ctx).get<double>();
    cover.config.rng_seed = require(cfg, "seed", ctx).get<std::uint64_t>();

    const json& cubes = require(j, "cubes", ctx);
    if (!cubes.is_array()) throw std::runtime_error(std::string(ctx) + ": 'cubes' must be an array");
    cover.leaves.reserve(cubes.size());
    for (const auto& cj : cubes) {
        Hypercube c;
        c.lower = require(cj, "lower", ctx).get<std::vector<double>>();
        c.upper = require(cj, "upper", ctx).get<std::vector<double>>();
        c.status = status_from_string(require(cj, "status", ctx).get<std::string>(), ctx);
        const json& cls = require(cj, "class", ctx);
        c.assigned_class = cls.is_null() ? -1 : cls.get<int>();
        c.n_points = require(cj, "n_points", ctx).get<int>();
        if (static_cast<int>(c.lower.size()) != cover.n_dims ||
            static_cast<int>(c.upper.size()) != cover.n_dims)
            throw std::runtime_error(std::string(ctx) + ": cube bound length != n_dims");
        cover.leaves.push_back(std::move(c));
    }
    if (cover.leaves.empty()) throw std::runtime_error(std::string(ctx) + ": no cubes");

    // leaves tile the bounding cube, so its bounds are the leaf envelope
    cover.bounding_cube.lower = cover.leaves[0].lower;
    cover.bounding_cube.upper = cover.leaves[0].upper;
    for (const auto& c : cover.leaves) {
        for (int jdx = 0; jdx < cover.n_dims; ++jdx) {
            cover.bounding_cube.lower[jdx] = std::min(cover.bounding_cube.lower[jdx], c.lower[jdx]);
            cover.bounding_cube.upper[jdx] = std::max(cover.bounding_cube.upper[jdx], c.upper[jdx]);
        }
    }
    cover.bounding_cube.status = CubeStatus::Inhomogeneous;
    return cover;
}

std::string export_layers(const std::vector<AffineLayer>& layers, int n_inputs,
                          int n_classes, double epsilon) {
    std::string out;
    std::size_t n_weights = 0;
    for (const auto& l : layers) n_weights += static_cast<std::size_t>(l.weights.size());
    out.reserve(256 + n_weights * 26);

    out += "{\"n_inputs\":" + std::to_string(n_inputs);
    out += ",\"n_classes\":" + std::to_string(n_classes);
    out += ",\"epsilon\":" + format_real(epsilon);
    out += ",\"class_blocks\":[],\"layers\":[";
    for (std::size_t li = 0; li < layers.size(); ++li) {
        if (li) out += ',';
        const AffineLayer& l = layers[li];
        out += "{\"activation\":\"" + to_string(l.activation) + "\"";
        out += ",\"rows\":" + std::to_string(l.weights.rows());
        out += ",\"cols\":" + std::to_string(l.weights.cols());
        out += ",\"weights\":";
        // Eigen stores column-major; emit row-major per the schema
        Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = l.weights;
        append_real_array(out, rm.data(), static_cast<std::size_t>(rm.size()));
        out += ",\"biases\":";
        append_real_array(out, l.biases.data(), static_cast<std::size_t>(l.biases.size()));
        out += '}';
    }
    out += "]}";
    return out;
}

std::string export_network(const CompiledNetwork& net) {
    std::string body = export_layers(net.layers, net.n_inputs, net.n_classes, net.epsilon);
    // splice the real class_blocks into the placeholder
    std::string blocks = "\"class_blocks\":[";
    for (std::size_t c = 0; c < net.class_blocks.size(); ++c) {
        if (c) blocks += ',';
        blocks += '[';
        for (std::size_t i = 0; i < net.class_blocks[c].size(); ++i) {
            if (i) blocks += ',';
            blocks += std::to_string(net.class_blocks[c][i]);
        }
        blocks += ']';
    }
    blocks += ']';
    std::size_t pos = body.find("\"class_blocks\":[]");
    body.replace(pos, std::string("\"class_blocks\":[]").size(), blocks);
    return body;
}

CompiledNetwork import_network(const std::string& json_text) {
    const char* ctx = "network JSON";
    json j = parse_or_throw(json_text, ctx);

    CompiledNetwork net;
    net.n_inputs = require(j, "n_inputs", ctx).get<int>();
    net.n_classes = require(j, "n_classes", ctx).get<int>();
    net.epsilon = require(j, "epsilon", ctx).get<double>();
    net.class_blocks = require(j, "class_blocks", ctx).get<std::vector<std::vector<int>>>();

    const json& layers = require(j, "layers", ctx);
    if (!layers.is_array())
        throw std::runtime_error(std::string(ctx) + ": 'layers' must be an array");
    for (const auto& lj : layers) {
        AffineLayer l;
        l.activation = activation_from_string(require(lj, "activation", ctx).get<std::string>(), ctx);
        int rows = require(lj, "rows", ctx).get<int>();
        int cols = require(lj, "cols", ctx).get<int>();
        auto w = require(lj, "weights", ctx).get<std::vector<double>>();
        auto b = require(lj, "biases", ctx).get<std::vector<double>>();
        if (static_cast<int>(w.size()) != rows * cols)
            throw std::runtime_error(std::string(ctx) + ": field 'weights' has wrong length");
        if (static_cast<int>(b.size()) != rows)
            throw std::runtime_error(std::string(ctx) + ": field 'biases' has wrong length");
        l.weights.resize(rows, cols);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) l.weights(r, c) = w[static_cast<std::size_t>(r) * cols + c];
        l.biases = Eigen::Map<Eigen::VectorXd>(b.data(), rows);
        net.layers.push_back(std::move(l));
    }
    if (net.layers.empty()) throw std::runtime_error(std::string(ctx) + ": no layers");
    return net;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace hypercover
