#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hypercover/bench.hpp"
#include "hypercover/cover.hpp"
#include "hypercover/data.hpp"
#include "hypercover/json_io.hpp"
#include "hypercover/network.hpp"
#include "hypercover/svg.hpp"

namespace hc = hypercover;

namespace {

struct CommonOpts {
    std::string dataset;       // iris | wine | mnist200 | mnist2000, or empty with --csv
    std::string csv_path;
    int label_col = -1;
    std::string idx_images;
    std::string idx_labels;
    std::size_t max_points = 0;
    std::string data_dir = "data";
    std::uint64_t seed = 7;
    double min_length = 0.0;   // 0 = auto per training split
    double max_aspect = 4.0;
    double epsilon = 0.0;      // 0 = auto (2 x min_length)
    int pca_dims = -1;         // -1 = dataset default
    double train_fraction = 0.7;
    bool no_fill = false;
    std::string score_mode = "exclude-empty";
    std::string output;
};

hc::ScoreMode parse_score_mode(const std::string& s) {
    if (s == "literal") return hc::ScoreMode::LiteralZero;
    if (s == "exclude-empty") return hc::ScoreMode::ExcludeEmptyPairs;
    throw CLI::ValidationError("--score-mode must be 'literal' or 'exclude-empty'");
}

struct ResolvedDataset {
    hc::Dataset data;
    std::string id;
    int default_pca = 0;
    int default_epochs = 20;
};

ResolvedDataset load_dataset(const CommonOpts& o) {
    ResolvedDataset r;
    if (!o.csv_path.empty()) {
        r.data = hc::load_csv(o.csv_path, o.label_col);
        r.id = o.csv_path;
        r.default_pca = 0;
        return r;
    }
    if (!o.idx_images.empty() || !o.idx_labels.empty()) {
        if (o.idx_images.empty() || o.idx_labels.empty())
            throw std::runtime_error("need both --idx-images and --idx-labels");
        r.data = hc::load_idx(o.idx_images, o.idx_labels, o.max_points, 2026);
        r.id = "idx";
        r.default_pca = 10;
        r.default_epochs = 80;
        return r;
    }
    if (o.dataset == "iris") {
        r.data = hc::load_csv(o.data_dir + "/iris.csv", -1);
        r.id = "iris";
        r.default_pca = 4;
        return r;
    }
    if (o.dataset == "wine") {
        r.data = hc::load_csv(o.data_dir + "/wine.csv", -1);
        r.id = "wine";
        r.default_pca = 5;
        return r;
    }
    if (o.dataset == "mnist200" || o.dataset == "mnist2000") {
        std::size_t n = o.dataset == "mnist200" ? 200 : 2000;
        // one fixed subset per preset; replications reshuffle splits, not the subset
        r.data = hc::load_idx(o.data_dir + "/mnist/train-images-idx3-ubyte",
                              o.data_dir + "/mnist/train-labels-idx1-ubyte", n, 2026);
        r.id = o.dataset;
        r.default_pca = 10;
        r.default_epochs = 80;
        return r;
    }
    throw std::runtime_error("unknown dataset '" + o.dataset +
                             "' (expected iris, wine, mnist200, mnist2000, or --csv)");
}

void add_common_flags(CLI::App* cmd, CommonOpts& o, bool with_cover_knobs) {
    cmd->add_option("--dataset", o.dataset, "iris | wine | mnist200 | mnist2000");
    cmd->add_option("--csv", o.csv_path, "load a custom CSV dataset instead");
    cmd->add_option("--label-col", o.label_col, "CSV label column (negative counts from end)");
    cmd->add_option("--idx-images", o.idx_images, "IDX image file for a custom subset");
    cmd->add_option("--idx-labels", o.idx_labels, "IDX label file for a custom subset");
    cmd->add_option("--max-points", o.max_points, "subsample size for IDX input");
    cmd->add_option("--data-dir", o.data_dir, "directory with the bundled datasets");
    cmd->add_option("--seed", o.seed, "base RNG seed");
    cmd->add_option("--pca-dims", o.pca_dims, "project to this many PCA dimensions");
    cmd->add_option("--train-fraction", o.train_fraction, "training split fraction");
    cmd->add_option("--output", o.output, "output file (default stdout)");
    if (with_cover_knobs) {
        cmd->add_option("--min-length", o.min_length,
                        "smallest cube edge l (default: adaptive per split)");
        cmd->add_option("--max-aspect", o.max_aspect, "daughter aspect ratio cap r*");
        cmd->add_option("--epsilon", o.epsilon,
                        "membership softening scale (default: 2 x l)");
        cmd->add_flag("--no-fill", o.no_fill, "skip the porosity fill");
        cmd->add_option("--score-mode", o.score_mode,
                        "axis scoring: 'literal' or 'exclude-empty'");
    }
}

void emit(const std::string& text, const std::string& output) {
    if (output.empty())
        std::cout << text << "\n";
    else
        hc::write_text_file(output, text);
}

int do_build(const CommonOpts& o, const std::string& svg_path) {
    ResolvedDataset rd = load_dataset(o);
    int d = o.pca_dims >= 0 ? o.pca_dims : rd.default_pca;
    hc::Dataset projected = rd.data;
    if (d > 0) projected = hc::pca_transform(hc::pca_fit(rd.data, d), rd.data);

    hc::Dataset train = projected;
    if (o.train_fraction < 0.9999) {
        hc::SplitSpec spec{o.train_fraction, o.seed};
        train = hc::split(projected, spec).first;
    }
    auto [normalized, norm] = hc::normalize(train);

    hc::CoverConfig cc;
    if (o.min_length > 0.0) {
        cc.min_length = o.min_length;
    } else {
        double l_star = hc::min_interclass_distance(normalized.points);
        cc.min_length = std::clamp(l_star / 2.0, 0.1, 0.25);
    }
    cc.epsilon = o.epsilon > 0.0 ? o.epsilon : 2.0 * cc.min_length;
    cc.max_aspect_ratio = o.max_aspect;
    cc.fill_porosity = !o.no_fill;
    cc.score_mode = parse_score_mode(o.score_mode);
    cc.rng_seed = o.seed;

    hc::Cover cover = hc::build_cover(normalized.points, cc);
    std::fprintf(stderr,
                 "built cover: %zu leaves (%zu homogeneous, %zu violating, %zu filled, "
                 "%zu empty), l=%g, epsilon=%g\n",
                 cover.leaves.size(), cover.count(hc::CubeStatus::Homogeneous),
                 cover.count(hc::CubeStatus::Violating), cover.count(hc::CubeStatus::Filled),
                 cover.count(hc::CubeStatus::Empty), cc.min_length, cc.epsilon);

    emit(hc::export_cover(cover), o.output);
    if (!svg_path.empty())
        hc::write_text_file(svg_path, hc::cover_to_svg(cover, normalized.points));
    return 0;
}

int do_compile(const std::string& input, double epsilon, const std::string& output) {
    hc::Cover cover = hc::import_cover(hc::read_text_file(input));
    hc::CompiledNetwork net = hc::compile(cover, epsilon);
    std::fprintf(stderr, "compiled network: %d inputs, %d classes, %zu cubes\n",
                 net.n_inputs, net.n_classes, net.class_blocks.empty() ? 0 :
                 [&] { std::size_t k = 0; for (auto& b : net.class_blocks) k += b.size(); return k; }());
    emit(hc::export_network(net), output);
    return 0;
}

int do_classify(const std::string& network_path, const std::string& points_path,
                bool has_header, const std::string& output) {
    hc::CompiledNetwork net = hc::import_network(hc::read_text_file(network_path));

    // points CSV: one row per point, n_inputs numeric columns, no label
    std::string text = hc::read_text_file(points_path);
    std::string result;
    std::size_t row = 0;
    std::size_t start = 0;
    while (start < text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(start, end - start);
        start = end + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        ++row;
        if (row == 1 && has_header) continue;

        Eigen::VectorXd x(net.n_inputs);
        std::size_t pos = 0;
        for (int j = 0; j < net.n_inputs; ++j) {
            std::size_t comma = line.find(',', pos);
            std::string field = line.substr(pos, comma == std::string::npos
                                                     ? std::string::npos
                                                     : comma - pos);
            char* endp = nullptr;
            x(j) = std::strtod(field.c_str(), &endp);
            if (endp == field.c_str())
                throw std::runtime_error("classify: non-numeric value at row " +
                                         std::to_string(row));
            if (comma == std::string::npos) {
                if (j + 1 < net.n_inputs)
                    throw std::runtime_error(
                        "classify: point dimension does not match network inputs");
                pos = line.size();
            } else {
                pos = comma + 1;
            }
        }
        if (pos < line.size())
            throw std::runtime_error("classify: point dimension does not match network inputs");

        result += std::to_string(hc::forward(net, x).predicted);
        result += '\n';
    }
    if (row == 0) throw std::runtime_error("classify: no points in " + points_path);
    if (!output.empty())
        hc::write_text_file(output, result);
    else
        std::cout << result;
    return 0;
}

int do_bench(const CommonOpts& o, const std::string& method, int replications,
             int epochs, int jobs, bool fill) {
    ResolvedDataset rd = load_dataset(o);

    hc::BenchConfig bc;
    bc.dataset_id = rd.id;
    bc.method = method == "mlp" ? hc::Method::Mlp : hc::Method::Cover;
    if (method != "mlp" && method != "cover")
        throw CLI::ValidationError("--method must be 'cover' or 'mlp'");
    bc.replications = replications;
    bc.base_seed = o.seed;
    bc.train_fraction = o.train_fraction;
    bc.pca_dims = o.pca_dims >= 0 ? o.pca_dims : rd.default_pca;
    bc.min_length = o.min_length;
    bc.epsilon = o.epsilon;
    bc.max_aspect = o.max_aspect;
    bc.fill = fill && !o.no_fill;
    bc.score_mode = parse_score_mode(o.score_mode);
    bc.mlp.epochs = epochs > 0 ? epochs : rd.default_epochs;
    bc.jobs = jobs;

    if (bc.pca_dims > 0) bc.dataset_id += " (" + std::to_string(bc.pca_dims) + "D PCA)";

    hc::BenchmarkReport report = hc::run_benchmark(rd.data, bc);
    std::cout << hc::report_table(report);
    if (!o.output.empty()) hc::write_text_file(o.output, hc::report_to_json(report));
    return 0;
}

int do_inspect(const std::string& input) {
    std::string text = hc::read_text_file(input);
    // covers carry "cubes"; networks carry "layers"
    if (text.find("\"cubes\"") != std::string::npos) {
        hc::Cover cover = hc::import_cover(text);
        std::printf("cover: %d dims, %d classes, %zu leaves\n", cover.n_dims,
                    cover.n_classes, cover.leaves.size());
        std::printf("  homogeneous %zu, violating %zu, filled %zu, empty %zu\n",
                    cover.count(hc::CubeStatus::Homogeneous),
                    cover.count(hc::CubeStatus::Violating),
                    cover.count(hc::CubeStatus::Filled),
                    cover.count(hc::CubeStatus::Empty));
        std::printf("  config: l=%s, r*=%s, epsilon=%s, seed=%llu\n",
                    hc::format_real(cover.config.min_length).c_str(),
                    hc::format_real(cover.config.max_aspect_ratio).c_str(),
                    hc::format_real(cover.config.effective_epsilon()).c_str(),
                    static_cast<unsigned long long>(cover.config.rng_seed));
        double vol = 0.0;
        for (const auto& leaf : cover.leaves) vol += leaf.volume();
        std::printf("  leaf volume sum %s vs bounding %s\n",
                    hc::format_real(vol).c_str(),
                    hc::format_real(cover.bounding_cube.volume()).c_str());
        return 0;
    }
    hc::CompiledNetwork net = hc::import_network(text);
    std::printf("network: %d inputs, %d classes, epsilon=%s\n", net.n_inputs,
                net.n_classes, hc::format_real(net.epsilon).c_str());
    for (std::size_t i = 0; i < net.layers.size(); ++i) {
        const auto& l = net.layers[i];
        std::printf("  layer %zu: %lld x %lld, %s\n", i + 1,
                    static_cast<long long>(l.weights.rows()),
                    static_cast<long long>(l.weights.cols()),
                    hc::to_string(l.activation).c_str());
    }
    std::printf("  class blocks:");
    for (const auto& b : net.class_blocks) std::printf(" %zu", b.size());
    std::printf(" cubes\n");
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypercube-cover classifier: build covers, compile ReLU networks, "
                 "run benchmarks"};
    app.require_subcommand(1);

    CommonOpts build_opts;
    std::string build_svg;
    CLI::App* build = app.add_subcommand("build", "build a cover from a dataset");
    add_common_flags(build, build_opts, true);
    build->add_option("--svg", build_svg, "also render the cover (2D only)");

    std::string compile_input, compile_output;
    double compile_epsilon = 0.0;
    CLI::App* compile_cmd = app.add_subcommand("compile", "compile a cover JSON to a network JSON");
    compile_cmd->add_option("--input", compile_input, "cover JSON path")->required();
    compile_cmd->add_option("--epsilon", compile_epsilon, "override the cover's epsilon");
    compile_cmd->add_option("--output", compile_output, "output file (default stdout)");

    std::string classify_network, classify_points, classify_output;
    bool classify_header = false;
    CLI::App* classify_cmd = app.add_subcommand("classify", "classify points with a network JSON");
    classify_cmd->add_option("--network", classify_network, "network JSON path")->required();
    classify_cmd->add_option("--points", classify_points, "CSV of points, one per row")->required();
    classify_cmd->add_flag("--has-header", classify_header, "skip the first CSV row");
    classify_cmd->add_option("--output", classify_output, "output file (default stdout)");

    CommonOpts bench_opts;
    std::string bench_method = "cover";
    int bench_reps = 20;
    int bench_epochs = 0;
    int bench_jobs = 1;
    bool bench_fill = false;
    CLI::App* bench = app.add_subcommand("bench", "replicated train/eval benchmark");
    add_common_flags(bench, bench_opts, true);
    bench->add_option("--method", bench_method, "cover | mlp");
    bench->add_option("--replications", bench_reps, "number of replications");
    bench->add_option("--epochs", bench_epochs, "MLP epochs (default per dataset)");
    bench->add_option("--jobs", bench_jobs, "parallel replications");
    bench->add_flag("--fill", bench_fill,
                    "apply the porosity fill before evaluating (benchmarks skip it "
                    "by default; measured accuracy is higher without)");

    std::string inspect_input;
    CLI::App* inspect = app.add_subcommand("inspect", "summarize a cover or network JSON");
    inspect->add_option("--input", inspect_input, "cover or network JSON path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (build->parsed()) return do_build(build_opts, build_svg);
        if (compile_cmd->parsed())
            return do_compile(compile_input, compile_epsilon, compile_output);
        if (classify_cmd->parsed())
            return do_classify(classify_network, classify_points, classify_header,
                               classify_output);
        if (bench->parsed())
            return do_bench(bench_opts, bench_method, bench_reps, bench_epochs,
                            bench_jobs, bench_fill);
        if (inspect->parsed()) return do_inspect(inspect_input);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
