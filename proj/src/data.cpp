#include "hypercover/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hypercover/rng.hpp"

namespace hypercover {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double parse_real(const std::string& s, std::size_t row, std::size_t col) {
    const char* begin = s.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || (end && *end != '\0')) {
        throw std::runtime_error("load_csv: non-numeric feature at row " +
                                 std::to_string(row) + " column " + std::to_string(col));
    }
    return v;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::uint32_t read_be_u32(std::istream& in, const std::string& what) {
    unsigned char buf[4];
    if (!in.read(reinterpret_cast<char*>(buf), 4))
        throw std::runtime_error("load_idx: truncated file reading " + what);
    return (std::uint32_t(buf[0]) << 24) | (std::uint32_t(buf[1]) << 16) |
           (std::uint32_t(buf[2]) << 8) | std::uint32_t(buf[3]);
}

}  // namespace

Dataset load_csv(const std::string& path, int label_column, bool has_header) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);

    Dataset ds;
    std::string line;
    std::size_t row = 0;
    bool first = true;
    int n_cols = -1;
    int label_idx = -1;

    while (std::getline(in, line)) {
        ++row;
        std::string t = trim(line);
        if (t.empty()) continue;
        auto fields = split_line(t);

        if (first) {
            n_cols = static_cast<int>(fields.size());
            label_idx = label_column < 0 ? n_cols + label_column : label_column;
            if (label_idx < 0 || label_idx >= n_cols)
                throw std::runtime_error("load_csv: label column out of range");
            if (has_header) {
                for (int c = 0; c < n_cols; ++c)
                    if (c != label_idx) ds.feature_names.push_back(trim(fields[c]));
                first = false;
                continue;
            }
            for (int c = 0; c < n_cols - 1; ++c)
                ds.feature_names.push_back("f" + std::to_string(c));
            first = false;
        }

        if (static_cast<int>(fields.size()) != n_cols)
            throw std::runtime_error("load_csv: ragged row " + std::to_string(row));

        LabeledPoint p;
        for (int c = 0; c < n_cols; ++c) {
            if (c == label_idx) continue;
            p.coords.push_back(parse_real(trim(fields[c]), row, c));
        }
        std::string label = trim(fields[label_idx]);
        auto it = std::find(ds.class_names.begin(), ds.class_names.end(), label);
        if (it == ds.class_names.end()) {
            ds.class_names.push_back(label);
            p.label = static_cast<int>(ds.class_names.size()) - 1;
        } else {
            p.label = static_cast<int>(it - ds.class_names.begin());
        }
        ds.points.push_back(std::move(p));
    }

    if (ds.points.empty()) throw std::runtime_error("load_csv: no data rows in " + path);
    return ds;
}

Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 std::size_t max_points, std::uint64_t seed) {
    std::ifstream img(images_path, std::ios::binary);
    if (!img) throw std::runtime_error("load_idx: cannot open " + images_path);
    std::ifstream lab(labels_path, std::ios::binary);
    if (!lab) throw std::runtime_error("load_idx: cannot open " + labels_path);

    std::uint32_t img_magic = read_be_u32(img, "image magic");
    if (img_magic != 0x00000803u)
        throw std::runtime_error("load_idx: bad image magic");
    std::uint32_t n_images = read_be_u32(img, "image count");
    std::uint32_t rows = read_be_u32(img, "image rows");
    std::uint32_t cols = read_be_u32(img, "image cols");

    std::uint32_t lab_magic = read_be_u32(lab, "label magic");
    if (lab_magic != 0x00000801u)
        throw std::runtime_error("load_idx: bad label magic");
    std::uint32_t n_labels = read_be_u32(lab, "label count");
    if (n_images != n_labels)
        throw std::runtime_error("load_idx: image/label count mismatch");

    const std::size_t pixels = static_cast<std::size_t>(rows) * cols;
    std::vector<unsigned char> img_bytes(static_cast<std::size_t>(n_images) * pixels);
    if (!img.read(reinterpret_cast<char*>(img_bytes.data()),
                  static_cast<std::streamsize>(img_bytes.size())))
        throw std::runtime_error("load_idx: truncated image data");
    std::vector<unsigned char> lab_bytes(n_labels);
    if (!lab.read(reinterpret_cast<char*>(lab_bytes.data()),
                  static_cast<std::streamsize>(lab_bytes.size())))
        throw std::runtime_error("load_idx: truncated label data");

    std::vector<std::size_t> take(n_images);
    for (std::size_t i = 0; i < n_images; ++i) take[i] = i;
    if (max_points > 0 && max_points < n_images) {
        // partial Fisher-Yates: the first max_points slots are a uniform
        // sample without replacement
        Rng rng(seed);
        for (std::size_t i = 0; i < max_points; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng.below(n_images - i));
            std::swap(take[i], take[j]);
        }
        take.resize(max_points);
    }

    Dataset ds;
    ds.points.reserve(take.size());
    for (std::size_t i : take) {
        LabeledPoint p;
        p.coords.resize(pixels);
        for (std::size_t k = 0; k < pixels; ++k)
            p.coords[k] = img_bytes[i * pixels + k] / 255.0;
        p.label = lab_bytes[i];
        ds.points.push_back(std::move(p));
    }
    for (std::size_t k = 0; k < pixels; ++k)
        ds.feature_names.push_back("px" + std::to_string(k));
    for (int c = 0; c < 10; ++c) ds.class_names.push_back(std::to_string(c));
    return ds;
}

PcaModel pca_fit(const Dataset& dataset, int d) {
    const int n = dataset.n_dims();
    const int N = static_cast<int>(dataset.size());
    if (d > n) throw std::invalid_argument("pca_fit: d > n");
    if (N < 2) throw std::invalid_argument("pca_fit: need at least two points");

    Eigen::MatrixXd X(N, n);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < n; ++j) X(i, j) = dataset.points[i].coords[j];

    PcaModel model;
    model.mean = X.colwise().mean();
    Eigen::MatrixXd centered = X.rowwise() - model.mean.transpose();
    Eigen::MatrixXd cov = (centered.adjoint() * centered) / double(N - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("pca_fit: eigendecomposition failed");

    // eigenvalues ascend; take the top d from the back
    model.components.resize(d, n);
    model.explained_variance.resize(d);
    for (int k = 0; k < d; ++k) {
        int src = n - 1 - k;
        Eigen::VectorXd comp = solver.eigenvectors().col(src);
        int big = 0;
        for (int j = 1; j < n; ++j)
            if (std::abs(comp(j)) > std::abs(comp(big))) big = j;
        if (comp(big) < 0.0) comp = -comp;
        model.components.row(k) = comp.transpose();
        model.explained_variance(k) = solver.eigenvalues()(src);
    }
    return model;
}

Dataset pca_transform(const PcaModel& model, const Dataset& dataset) {
    const int d = static_cast<int>(model.components.rows());
    Dataset out;
    out.class_names = dataset.class_names;
    for (int k = 0; k < d; ++k) out.feature_names.push_back("pc" + std::to_string(k + 1));
    out.points.reserve(dataset.size());
    for (const auto& p : dataset.points) {
        Eigen::Map<const Eigen::VectorXd> x(p.coords.data(), p.coords.size());
        Eigen::VectorXd y = model.components * (x - model.mean);
        LabeledPoint q;
        q.coords.assign(y.data(), y.data() + d);
        q.label = p.label;
        out.points.push_back(std::move(q));
    }
    return out;
}

std::pair<Dataset, Normalization> normalize(const Dataset& dataset) {
    const int n = dataset.n_dims();
    Normalization norm;
    norm.maps.resize(n);
    for (int j = 0; j < n; ++j) {
        double lo = dataset.points[0].coords[j];
        double hi = lo;
        for (const auto& p : dataset.points) {
            lo = std::min(lo, p.coords[j]);
            hi = std::max(hi, p.coords[j]);
        }
        norm.maps[j].lo = lo;
        norm.maps[j].span = hi - lo;
    }
    return {apply_normalization(norm, dataset), norm};
}

Dataset apply_normalization(const Normalization& norm, const Dataset& dataset) {
    Dataset out;
    out.feature_names = dataset.feature_names;
    out.class_names = dataset.class_names;
    out.points = dataset.points;
    for (auto& p : out.points)
        for (std::size_t j = 0; j < p.coords.size(); ++j)
            p.coords[j] = norm.maps[j].apply(p.coords[j]);
    return out;
}

std::pair<Dataset, Dataset> split(const Dataset& dataset, const SplitSpec& spec) {
    const std::size_t N = dataset.size();
    if (N < 2) throw std::invalid_argument("split: need at least two points");
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0))
        throw std::invalid_argument("split: train_fraction must be in (0,1)");

    std::vector<std::size_t> idx(N);
    for (std::size_t i = 0; i < N; ++i) idx[i] = i;
    Rng rng(spec.seed);
    rng.shuffle(idx);

    std::size_t n_train = static_cast<std::size_t>(
        std::llround(spec.train_fraction * static_cast<double>(N)));
    n_train = std::clamp<std::size_t>(n_train, 1, N - 1);

    Dataset train, eval;
    train.feature_names = eval.feature_names = dataset.feature_names;
    train.class_names = eval.class_names = dataset.class_names;
    for (std::size_t i = 0; i < N; ++i) {
        (i < n_train ? train : eval).points.push_back(dataset.points[idx[i]]);
    }
    return {train, eval};
}

}  // namespace hypercover
