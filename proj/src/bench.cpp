#include "hypercover/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "hypercover/json_io.hpp"
#include "hypercover/network.hpp"
#include "hypercover/rng.hpp"

namespace hypercover {

std::string to_string(Method m) { return m == Method::Cover ? "cover" : "mlp"; }

std::uint64_t replication_split_seed(std::uint64_t base_seed, int rep) {
    return base_seed + static_cast<std::uint64_t>(rep);
}

std::uint64_t replication_build_seed(std::uint64_t base_seed, int rep) {
    return splitmix64(base_seed * 7919 + static_cast<std::uint64_t>(rep));
}

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
}

double cover_accuracy(const Cover& cover, const Dataset& data) {
    if (data.points.empty()) return 0.0;
    BoxEvaluator eval(cover);
    std::size_t hits = 0;
    for (const auto& p : data.points)
        if (eval.forward(p.coords).predicted == p.label) ++hits;
    return static_cast<double>(hits) / static_cast<double>(data.size());
}

namespace {

struct ReplicationData {
    Dataset train;
    Dataset eval;
    std::unique_ptr<Cover> cover;
    double accuracy = 0.0;
    double clock_ms = 0.0;
};

std::string snapshot_json(const BenchConfig& c, int n_dims_used) {
    std::string s = "{";
    s += "\"dataset_id\":\"" + c.dataset_id + "\"";
    s += ",\"method\":\"" + to_string(c.method) + "\"";
    s += ",\"replications\":" + std::to_string(c.replications);
    s += ",\"base_seed\":" + std::to_string(c.base_seed);
    s += ",\"train_fraction\":" + format_real(c.train_fraction);
    s += ",\"pca_dims\":" + std::to_string(c.pca_dims);
    s += ",\"n_dims_used\":" + std::to_string(n_dims_used);
    if (c.method == Method::Cover) {
        s += ",\"min_length\":";
        s += c.min_length > 0.0 ? format_real(c.min_length) : std::string("\"auto\"");
        s += ",\"epsilon\":";
        s += c.epsilon > 0.0 ? format_real(c.epsilon) : std::string("\"auto\"");
        s += ",\"max_aspect\":" + format_real(c.max_aspect);
        s += ",\"fill\":";
        s += c.fill ? "true" : "false";
        s += ",\"score_mode\":\"";
        s += c.score_mode == ScoreMode::ExcludeEmptyPairs ? "exclude-empty" : "literal";
        s += "\"";
    } else {
        s += ",\"hidden\":[";
        for (std::size_t i = 0; i < c.mlp.hidden_layers.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(c.mlp.hidden_layers[i]);
        }
        s += "],\"learning_rate\":" + format_real(c.mlp.learning_rate);
        s += ",\"epochs\":" + std::to_string(c.mlp.epochs);
        s += ",\"batch_size\":" + std::to_string(c.mlp.batch_size);
    }
    s += ",\"jobs\":" + std::to_string(c.jobs);
    s += "}";
    return s;
}

CoverConfig cover_config_for_split(const BenchConfig& cfg,
                                   const std::vector<LabeledPoint>& train_points,
                                   std::uint64_t build_seed) {
    CoverConfig cc;
    if (cfg.min_length > 0.0) {
        cc.min_length = cfg.min_length;
    } else {
        double l_star = min_interclass_distance(train_points);
        cc.min_length = std::clamp(l_star / 2.0, 0.1, 0.25);
    }
    cc.epsilon = cfg.epsilon > 0.0 ? cfg.epsilon : 2.0 * cc.min_length;
    cc.max_aspect_ratio = cfg.max_aspect;
    cc.fill_porosity = cfg.fill;
    cc.score_mode = cfg.score_mode;
    cc.rng_seed = build_seed;
    return cc;
}

void run_replication(const Dataset& projected, const BenchConfig& cfg, int rep,
                     ReplicationData& out) {
    SplitSpec spec{cfg.train_fraction, replication_split_seed(cfg.base_seed, rep)};
    auto [train_raw, eval_raw] = split(projected, spec);
    auto [train, norm] = normalize(train_raw);
    Dataset eval = apply_normalization(norm, eval_raw);

    using clock = std::chrono::steady_clock;
    if (cfg.method == Method::Cover) {
        CoverConfig cc = cover_config_for_split(
            cfg, train.points, replication_build_seed(cfg.base_seed, rep));
        auto t0 = clock::now();
        Cover cover = build_cover(train.points, cc);
        auto t1 = clock::now();
        out.clock_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        out.accuracy = cover_accuracy(cover, eval);
        out.cover = std::make_unique<Cover>(std::move(cover));
    } else {
        int m = 0;
        for (const auto& p : projected.points) m = std::max(m, p.label + 1);
        MlpConfig mc = cfg.mlp;
        mc.init_seed = replication_build_seed(cfg.base_seed, rep) ^ 0x6d6c70ull;
        Mlp mlp = mlp_init(train.n_dims(), m, mc);
        auto t0 = clock::now();
        mlp_train(mlp, train, mc);
        auto t1 = clock::now();
        out.clock_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        out.accuracy = mlp_accuracy(mlp, eval);
    }
    out.train = std::move(train);
    out.eval = std::move(eval);
}

}  // namespace

BenchmarkReport run_benchmark(const Dataset& dataset, const BenchConfig& config,
                              const ReplicationObserver& observer) {
    if (config.replications < 1)
        throw std::invalid_argument("run_benchmark: replications must be >= 1");

    Dataset projected = dataset;
    if (config.pca_dims > 0) {
        PcaModel pca = pca_fit(dataset, config.pca_dims);
        projected = pca_transform(pca, dataset);
    }

    std::vector<ReplicationData> reps(static_cast<std::size_t>(config.replications));
    int jobs = std::max(1, std::min(config.jobs, config.replications));
    if (jobs == 1) {
        for (int r = 0; r < config.replications; ++r)
            run_replication(projected, config, r, reps[static_cast<std::size_t>(r)]);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr failure = nullptr;
        std::mutex failure_mu;
        for (int t = 0; t < jobs; ++t) {
            pool.emplace_back([&]() {
                for (;;) {
                    int r = next.fetch_add(1);
                    if (r >= config.replications) return;
                    try {
                        run_replication(projected, config, r,
                                        reps[static_cast<std::size_t>(r)]);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mu);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (auto& th : pool) th.join();
        if (failure) std::rethrow_exception(failure);
    }

    if (observer) {
        for (int r = 0; r < config.replications; ++r) {
            const auto& rd = reps[static_cast<std::size_t>(r)];
            observer(r, rd.train, rd.eval, rd.cover.get(), rd.accuracy);
        }
    }

    BenchmarkReport report;
    report.dataset_id = config.dataset_id;
    report.method = to_string(config.method);
    report.replications = config.replications;
    for (const auto& rd : reps) report.accuracies.push_back(rd.accuracy);
    report.mean_accuracy = mean(report.accuracies);
    report.std_dev = sample_std(report.accuracies);
    report.std_dev_defined = config.replications > 1;
    std::vector<double> clocks;
    for (const auto& rd : reps) clocks.push_back(rd.clock_ms);
    report.mean_clock_ms = mean(clocks);
    report.config_snapshot = snapshot_json(config, projected.n_dims());
    return report;
}

std::string report_to_json(const BenchmarkReport& r) {
    std::string s = "{";
    s += "\"dataset_id\":\"" + r.dataset_id + "\"";
    s += ",\"method\":\"" + r.method + "\"";
    s += ",\"replications\":" + std::to_string(r.replications);
    s += ",\"accuracies\":[";
    for (std::size_t i = 0; i < r.accuracies.size(); ++i) {
        if (i) s += ',';
        s += format_real(r.accuracies[i]);
    }
    s += "],\"mean_accuracy\":" + format_real(r.mean_accuracy);
    s += ",\"std_dev\":" + format_real(r.std_dev);
    s += ",\"std_dev_defined\":";
    s += r.std_dev_defined ? "true" : "false";
    s += ",\"mean_clock_ms\":" + format_real(r.mean_clock_ms);
    s += ",\"config_snapshot\":" + r.config_snapshot;
    s += "}";
    return s;
}

std::string report_table(const BenchmarkReport& r) {
    char line[256];
    std::string out;
    out += "dataset                method  reps  mean_acc  std_dev  mean_clock_ms\n";
    std::snprintf(line, sizeof(line), "%-22s %-7s %4d  %7.4f   %6.4f   %10.2f\n",
                  r.dataset_id.c_str(), r.method.c_str(), r.replications,
                  r.mean_accuracy, r.std_dev_defined ? r.std_dev : 0.0, r.mean_clock_ms);
    out += line;
    return out;
}

}  // namespace hypercover
