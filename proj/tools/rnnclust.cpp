// Command line front end: cluster, sweep, report, bench and gen subcommands.

#include "rnnclust/core.hpp"
#include "rnnclust/dbscrn.hpp"
#include "rnnclust/harness/bench.hpp"
#include "rnnclust/harness/plot.hpp"
#include "rnnclust/harness/report.hpp"
#include "rnnclust/harness/sweep.hpp"
#include "rnnclust/harness/synthetic.hpp"
#include "rnnclust/neighbors.hpp"
#include "rnnclust/validation.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

using namespace rnnclust;
using namespace rnnclust::harness;

namespace {

struct InputOptions {
    std::string path;
    bool header = false;
    std::string label_col;  // "", "last" or an integer (negative counts from the end)
};

void add_input(CLI::App* app, InputOptions& in) {
    app->add_option("data", in.path, "CSV file of real-valued features")->required()->check(CLI::ExistingFile);
    app->add_flag("--header", in.header, "First line is a header");
    app->add_option("--label-col", in.label_col, "Column of ground-truth class ids: an index or 'last'");
}

DataSet load(const InputOptions& in) {
    CsvOptions opts;
    opts.has_header = in.header;
    if (in.label_col == "last") {
        opts.label_column = -1;
    } else if (!in.label_col.empty()) {
        try {
            opts.label_column = std::stol(in.label_col);
        } catch (const std::exception&) {
            throw CLI::ValidationError("--label-col", "expected an integer or 'last', got '" + in.label_col + "'");
        }
    }
    return read_csv_file(in.path, opts);
}

struct AlgoOptions {
    std::string algo = "dbscrn";
    std::size_t k = 0;
    double eps = 0.0;
    std::size_t min_pts = 0;
    std::size_t k_clusters = 0;
    std::string backend = "spatial";
};

void add_algo(CLI::App* app, AlgoOptions& a, bool with_values) {
    app->add_option("--algo", a.algo, "Algorithm")
        ->check(CLI::IsMember({"dbscan", "isdbscan", "dbscrn", "kmeans"}))
        ->capture_default_str();
    app->add_option("--backend", a.backend, "Neighbor search backend")
        ->check(CLI::IsMember({"spatial", "brute"}))
        ->capture_default_str();
    if (!with_values)
        return;
    app->add_option("--k", a.k, "Neighbor count for isdbscan / dbscrn");
    app->add_option("--eps", a.eps, "DBSCAN radius in squared standardized distance");
    app->add_option("--min-pts", a.min_pts, "DBSCAN MinPts");
    app->add_option("--K", a.k_clusters, "k-means cluster count");
}

NeighborBackend backend_of(const AlgoOptions& a) {
    return a.backend == "brute" ? NeighborBackend::brute : NeighborBackend::spatial;
}

ParamPoint param_point(const AlgoOptions& a) {
    ParamPoint p;
    p.algorithm = parse_algorithm(a.algo);
    switch (p.algorithm) {
        case Algorithm::dbscan:
            if (a.eps <= 0.0 || a.min_pts == 0)
                throw CLI::ValidationError("dbscan needs --eps > 0 and --min-pts >= 1");
            p.epsilon = a.eps;
            p.min_pts = a.min_pts;
            break;
        case Algorithm::kmeans:
            if (a.k_clusters == 0)
                throw CLI::ValidationError("kmeans needs --K >= 1");
            p.k_clusters = a.k_clusters;
            break;
        default:
            if (a.k == 0)
                throw CLI::ValidationError(a.algo + " needs --k >= 1");
            p.k = a.k;
            break;
    }
    return p;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f)
        throw std::runtime_error("cannot write " + path);
    return f;
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot read " + path);
    return nlohmann::json::parse(f);
}

int run_cluster(const InputOptions& in, const AlgoOptions& a, std::uint64_t seed, const std::string& out,
                const std::string& plot, const std::string& json_out) {
    const DataSet data = standardize(load(in));
    const ParamPoint p = param_point(a);
    std::optional<NeighborIndex> index;
    if (p.algorithm == Algorithm::isdbscan || p.algorithm == Algorithm::dbscrn) {
        if (p.k >= data.size())
            throw CLI::ValidationError("--k must be smaller than the number of entities");
        index = build_index(data.matrix, p.k, backend_of(a));
    }
    const Clustering c = run_algorithm(data.matrix, index ? &*index : nullptr, p, seed);
    const DbcvReport quality = dbcv(data.matrix, c);

    std::cout << data.name << ": " << describe(p) << "  clusters " << c.num_clusters << "  noise "
              << c.noise_count() << "  DBCV " << quality.score;
    std::optional<double> ari;
    if (data.true_labels) {
        ari = adjusted_rand_index(c, *data.true_labels);
        std::cout << "  ARI " << *ari;
    }
    std::cout << '\n';

    if (!out.empty()) {
        auto f = open_out(out);
        f << "index,cluster\n";
        for (std::size_t i = 0; i < c.size(); ++i)
            f << i << ',' << c.assignment[i] << '\n';
    }
    if (!json_out.empty()) {
        nlohmann::json j{{"schema", "rnnclust.cluster"},
                         {"schema_version", kSchemaVersion},
                         {"dataset", data.name},
                         {"params", to_json(p)},
                         {"seed", seed},
                         {"clusters", c.num_clusters},
                         {"noise", c.noise_count()},
                         {"dbcv", quality.score},
                         {"assignment", c.assignment}};
        j["ari"] = ari ? nlohmann::json(*ari) : nlohmann::json(nullptr);
        open_out(json_out) << j.dump(2) << '\n';
    }
    if (!plot.empty()) {
        PlotOptions po;
        po.title = data.name + " " + describe(p);
        plot_clustering(plot, data.matrix, c, po);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density-based clustering with reverse nearest neighbors"};
    app.set_config("--config", "", "INI file of option values; command line flags take precedence");
    app.require_subcommand(1);

    InputOptions in;
    AlgoOptions algo;
    std::uint64_t seed = 1;
    std::size_t runs = 0;
    unsigned threads = 1;
    std::string out;
    std::string plot;
    std::string json_out;

    // cluster
    auto* cluster = app.add_subcommand("cluster", "Run one algorithm with explicit parameters");
    add_input(cluster, in);
    add_algo(cluster, algo, true);
    cluster->add_option("--seed", seed, "Seed for the seeded algorithms")->capture_default_str();
    cluster->add_option("--out", out, "Labels CSV (index,cluster; -1 is noise)");
    cluster->add_option("--plot", plot, "SVG scatter plot (2-D data only)");
    cluster->add_option("--json", json_out, "Result JSON");

    // sweep
    SweepSpec sweep_spec;
    std::optional<double> eps_step;
    std::optional<std::size_t> k_lo, k_hi, mp_lo, mp_hi;
    std::string records_csv;
    auto* sweep = app.add_subcommand("sweep", "Evaluate an algorithm over its parameter grid");
    add_input(sweep, in);
    add_algo(sweep, algo, false);
    sweep->add_option("--runs", runs, "Runs per grid point for seeded algorithms (default 100)");
    sweep->add_option("--seed", seed, "Base seed")->capture_default_str();
    sweep->add_option("--threads", threads, "Worker threads")->capture_default_str();
    sweep->add_option("--eps-step", eps_step, "DBSCAN epsilon step (default 0.1)");
    sweep->add_option("--k-lo", k_lo, "Smallest k");
    sweep->add_option("--k-hi", k_hi, "Largest k");
    sweep->add_option("--min-pts-lo", mp_lo, "Smallest MinPts");
    sweep->add_option("--min-pts-hi", mp_hi, "Largest MinPts");
    sweep->add_option("--K", sweep_spec.k_clusters, "k-means cluster count (default: number of true classes)");
    sweep->add_option("--out", out, "SweepResult JSON")->required();
    sweep->add_option("--csv", records_csv, "Per-record CSV");

    // report
    std::vector<std::string> sweep_files;
    std::vector<std::string> bench_files;
    auto* report = app.add_subcommand("report", "Build ARI and timing tables from sweep results");
    report->add_option("sweeps", sweep_files, "SweepResult JSON files")->required()->check(CLI::ExistingFile);
    report->add_option("--bench", bench_files, "Bench JSON files whose timings replace the sweep timings")
        ->check(CLI::ExistingFile);
    report->add_option("--out", out, "Output directory")->required();

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Time complete runs: index build, clustering and DBCV");
    add_input(bench_cmd, in);
    add_algo(bench_cmd, algo, true);
    bench_cmd->add_option("--runs", runs, "Number of timed runs (default 100)");
    bench_cmd->add_option("--seed", seed, "Base seed")->capture_default_str();
    bench_cmd->add_option("--out", out, "Bench JSON");

    // gen
    std::string kind = "two_moons";
    SyntheticParams gen_params;
    auto* gen = app.add_subcommand("gen", "Write a labeled synthetic 2-D data set as CSV");
    gen->add_option("--kind", kind, "Generator")
        ->check(CLI::IsMember({"blobs", "two_moons", "nested_rings"}))
        ->capture_default_str();
    gen->add_option("--seed", seed, "Seed")->capture_default_str();
    gen->add_option("--sizes", gen_params.blob_sizes, "blobs: entities per blob")->delimiter(',');
    gen->add_option("--spread", gen_params.spread, "blobs: standard deviation");
    gen->add_option("--radius", gen_params.radius, "blobs: radius of the circle of centers");
    gen->add_option("--dense-points", gen_params.dense_points, "two_moons: entities in the dense moon");
    gen->add_option("--density-ratio", gen_params.density_ratio, "two_moons: dense / sparse entity ratio");
    gen->add_option("--ring-radii", gen_params.ring_radii, "nested_rings: radii")->delimiter(',');
    gen->add_option("--ring-points", gen_params.ring_points, "nested_rings: entities per ring")->delimiter(',');
    gen->add_option("--jitter", gen_params.jitter, "two_moons, nested_rings: coordinate noise");
    gen->add_option("--out", out, "CSV path (header x,y,label)")->required();
    gen->add_option("--plot", plot, "SVG of the true classes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cluster->parsed())
            return run_cluster(in, algo, seed, out, plot, json_out);

        if (sweep->parsed()) {
            const DataSet data = load(in);
            SweepSpec spec = default_sweep(parse_algorithm(algo.algo));
            spec.k_clusters = sweep_spec.k_clusters;
            spec.base_seed = seed;
            spec.threads = threads;
            spec.backend = backend_of(algo);
            if (runs > 0)
                spec.runs = runs;
            if (eps_step)
                spec.eps_step = *eps_step;
            if (k_lo)
                spec.k_lo = *k_lo;
            if (k_hi)
                spec.k_hi = *k_hi;
            if (mp_lo)
                spec.min_pts_lo = *mp_lo;
            if (mp_hi)
                spec.min_pts_hi = *mp_hi;
            const SweepResult result = run_sweep(data, spec);
            open_out(out) << to_json(result).dump(1) << '\n';
            if (!records_csv.empty()) {
                auto f = open_out(records_csv);
                write_records_csv(f, result);
            }
            const RunReport r = summarize(result);
            write_summary(std::cout, {r});
            return 0;
        }

        if (report->parsed()) {
            std::vector<BenchResult> benches;
            for (const auto& b : bench_files)
                benches.push_back(bench_from_json(read_json(b)));
            std::vector<RunReport> rows;
            for (const auto& s : sweep_files) {
                RunReport r = summarize(sweep_from_json(read_json(s)));
                for (const auto& b : benches)
                    if (b.dataset == r.dataset && b.params.algorithm == r.algorithm)
                        attach_timing(r, b);
                rows.push_back(std::move(r));
            }
            write_report_files(out, rows);
            write_summary(std::cout, rows);
            return 0;
        }

        if (bench_cmd->parsed()) {
            BenchSpec spec;
            spec.params = param_point(algo);
            spec.runs = runs > 0 ? runs : 100;
            spec.base_seed = seed;
            spec.backend = backend_of(algo);
            const BenchResult result = bench(load(in), spec);
            std::printf("%s %s: mean %.6f s  std %.6f  max %.6f  min %.6f over %zu runs\n", result.dataset.c_str(),
                        describe(result.params).c_str(), result.timing.mean, result.timing.std_dev,
                        result.timing.max, result.timing.min, result.timing.count);
            if (!out.empty())
                open_out(out) << to_json(result).dump(1) << '\n';
            return 0;
        }

        if (gen->parsed()) {
            const DataSet data = generate_synthetic(parse_synthetic_kind(kind), gen_params, seed);
            auto f = open_out(out);
            f << "x,y,label\n";
            char buf[64];
            for (std::size_t i = 0; i < data.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%.17g,%.17g", data.matrix(i, 0), data.matrix(i, 1));
                f << buf << ',' << (*data.true_labels)[i] << '\n';
            }
            if (!plot.empty()) {
                Clustering truth;
                truth.assignment = *data.true_labels;
                truth = canonicalize(truth.assignment);
                plot_clustering(plot, data.matrix, truth, PlotOptions{640, 480, 3.0, data.name});
            }
            return 0;
        }
    } catch (const CLI::Error& e) {
        return app.exit(e);
    } catch (const NoCoreEntityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}
