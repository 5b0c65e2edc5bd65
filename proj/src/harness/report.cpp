#include "rnnclust/harness/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace rnnclust::harness {

namespace {

std::string num(double v, int precision = 4) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string dataset_label(const RunReport& r) {
    return r.synthetic ? r.dataset + " (synthetic)" : r.dataset;
}

}  // namespace

RunReport summarize(const SweepResult& sweep) {
    if (sweep.grid.empty() || sweep.records.size() != sweep.grid.size() * sweep.runs)
        throw std::invalid_argument("sweep result is empty or incomplete");

    RunReport report;
    report.dataset = sweep.dataset;
    report.synthetic = sweep.synthetic;
    report.algorithm = sweep.algorithm;
    report.runs = sweep.runs;
    report.has_truth = sweep.records.front().ari.has_value();

    std::vector<double> best_ari;
    std::vector<double> selected_ari;
    std::vector<double> selected_dbcv;
    std::vector<double> timing;
    for (std::size_t r = 0; r < sweep.runs; ++r) {
        std::vector<ScoredResult<ParamPoint>> by_dbcv;
        by_dbcv.reserve(sweep.grid.size());
        double top = -std::numeric_limits<double>::infinity();
        std::size_t top_g = 0;
        for (std::size_t g = 0; g < sweep.grid.size(); ++g) {
            const SweepRecord& rec = sweep.at(g, r);
            by_dbcv.push_back({sweep.grid[g], {}, rec.dbcv});
            if (rec.ari && *rec.ari > top) {
                top = *rec.ari;
                top_g = g;
            }
        }
        const std::size_t chosen = select_best_index(std::span<const ScoredResult<ParamPoint>>(by_dbcv));
        const SweepRecord& pick = sweep.at(chosen, r);
        selected_dbcv.push_back(pick.dbcv);
        timing.push_back(pick.seconds);
        if (report.has_truth) {
            best_ari.push_back(top);
            selected_ari.push_back(*pick.ari);
        }
        if (r == 0) {
            report.best_params = sweep.grid[top_g];
            report.selected_params = sweep.grid[chosen];
        }
    }
    report.best_ari = summarize(best_ari);
    report.selected_ari = summarize(selected_ari);
    report.selected_dbcv = summarize(selected_dbcv);
    report.timing = summarize(timing);
    return report;
}

void attach_timing(RunReport& report, const BenchResult& bench) {
    report.timing = bench.timing;
    report.timing_from_bench = true;
}

namespace {

void write_ari_table(std::ostream& out, const std::vector<RunReport>& reports, bool selected) {
    out << "dataset,algorithm,mean,std_dev,max,params\n";
    for (const auto& r : reports) {
        const Summary& s = selected ? r.selected_ari : r.best_ari;
        const ParamPoint& p = selected ? r.selected_params : r.best_params;
        out << dataset_label(r) << ',' << to_string(r.algorithm) << ',';
        if (!r.has_truth) {
            out << "n/a,n/a,n/a," << describe(p) << '\n';
            continue;
        }
        if (is_deterministic(r.algorithm))
            out << "-,-,";
        else
            out << num(s.mean, 2) << ',' << num(s.std_dev, 3) << ',';
        out << num(s.max, 2) << ',' << describe(p) << '\n';
    }
}

}  // namespace

void write_best_ari_csv(std::ostream& out, const std::vector<RunReport>& reports) {
    write_ari_table(out, reports, false);
}

void write_selected_ari_csv(std::ostream& out, const std::vector<RunReport>& reports) {
    write_ari_table(out, reports, true);
}

void write_timing_csv(std::ostream& out, const std::vector<RunReport>& reports) {
    out << "dataset,algorithm,Mean,Std dev,Max,Min,samples,source\n";
    for (const auto& r : reports) {
        out << dataset_label(r) << ',' << to_string(r.algorithm) << ',' << num(r.timing.mean, 6) << ','
            << num(r.timing.std_dev, 6) << ',' << num(r.timing.max, 6) << ',' << num(r.timing.min, 6) << ','
            << r.timing.count << ',' << (r.timing_from_bench ? "bench" : "sweep") << '\n';
    }
}

void write_summary(std::ostream& out, const std::vector<RunReport>& reports) {
    for (const auto& r : reports) {
        out << dataset_label(r) << " / " << to_string(r.algorithm) << " (" << r.runs << " run"
            << (r.runs == 1 ? "" : "s") << ")\n";
        if (r.has_truth) {
            out << "  best ARI      max " << num(r.best_ari.max) << "  mean " << num(r.best_ari.mean) << "  at "
                << describe(r.best_params) << '\n';
            out << "  DBCV-selected ARI max " << num(r.selected_ari.max) << "  mean " << num(r.selected_ari.mean)
                << "  at " << describe(r.selected_params) << '\n';
        } else {
            out << "  DBCV-selected " << describe(r.selected_params) << '\n';
        }
        out << "  DBCV          mean " << num(r.selected_dbcv.mean) << '\n';
        out << "  seconds       mean " << num(r.timing.mean, 6) << "  max " << num(r.timing.max, 6) << '\n';
    }
}

void write_report_files(const std::string& directory, const std::vector<RunReport>& reports) {
    if (reports.empty())
        throw std::invalid_argument("nothing to report");
    std::filesystem::create_directories(directory);
    const std::filesystem::path dir(directory);
    auto open = [&](const char* name) {
        std::ofstream f(dir / name);
        if (!f)
            throw std::runtime_error("cannot write " + (dir / name).string());
        return f;
    };
    {
        auto f = open("best_ari.csv");
        write_best_ari_csv(f, reports);
    }
    {
        auto f = open("dbcv_selected_ari.csv");
        write_selected_ari_csv(f, reports);
    }
    {
        auto f = open("timing.csv");
        write_timing_csv(f, reports);
    }
    {
        auto f = open("summary.txt");
        write_summary(f, reports);
    }
    {
        auto f = open("report.json");
        f << to_json(reports).dump(2) << '\n';
    }
}

// ---------------------------------------------------------------------------
// JSON

using nlohmann::json;

json to_json(const ParamPoint& p) {
    json j{{"algorithm", to_string(p.algorithm)}};
    switch (p.algorithm) {
        case Algorithm::dbscan:
            j["epsilon"] = p.epsilon;
            j["min_pts"] = p.min_pts;
            break;
        case Algorithm::kmeans:
            j["k_clusters"] = p.k_clusters;
            break;
        default:
            j["k"] = p.k;
            break;
    }
    return j;
}

ParamPoint param_point_from_json(const json& j) {
    ParamPoint p;
    p.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    p.k = j.value("k", std::size_t{0});
    p.epsilon = j.value("epsilon", 0.0);
    p.min_pts = j.value("min_pts", std::size_t{0});
    p.k_clusters = j.value("k_clusters", std::size_t{0});
    return p;
}

namespace {

json summary_json(const Summary& s) {
    return {{"count", s.count}, {"mean", s.mean}, {"std_dev", s.std_dev}, {"max", s.max}, {"min", s.min}};
}

Summary summary_from_json(const json& j) {
    return {j.at("count").get<std::size_t>(), j.at("mean").get<double>(), j.at("std_dev").get<double>(),
            j.at("max").get<double>(), j.at("min").get<double>()};
}

void check_schema(const json& j, const char* schema) {
    if (j.value("schema", std::string{}) != schema)
        throw std::invalid_argument(std::string("expected a '") + schema + "' document");
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw std::invalid_argument("unsupported schema_version " + std::to_string(j.value("schema_version", 0)));
}

}  // namespace

json to_json(const SweepResult& s) {
    json grid = json::array();
    for (const auto& p : s.grid)
        grid.push_back(to_json(p));
    json records = json::array();
    for (const auto& r : s.records) {
        json rec{{"grid_index", r.grid_index}, {"run", r.run},         {"seed", r.seed},
                 {"clusters", r.clusters},     {"noise", r.noise},     {"dbcv", r.dbcv},
                 {"seconds", r.seconds}};
        rec["ari"] = r.ari ? json(*r.ari) : json(nullptr);
        records.push_back(std::move(rec));
    }
    return {{"schema", "rnnclust.sweep"},
            {"schema_version", kSchemaVersion},
            {"dataset", s.dataset},
            {"synthetic", s.synthetic},
            {"algorithm", to_string(s.algorithm)},
            {"entities", s.entities},
            {"features", s.features},
            {"runs", s.runs},
            {"base_seed", s.base_seed},
            {"grid", std::move(grid)},
            {"records", std::move(records)}};
}

SweepResult sweep_from_json(const json& j) {
    check_schema(j, "rnnclust.sweep");
    SweepResult s;
    s.dataset = j.at("dataset").get<std::string>();
    s.synthetic = j.value("synthetic", false);
    s.algorithm = parse_algorithm(j.at("algorithm").get<std::string>());
    s.entities = j.at("entities").get<std::size_t>();
    s.features = j.at("features").get<std::size_t>();
    s.runs = j.at("runs").get<std::size_t>();
    s.base_seed = j.at("base_seed").get<std::uint64_t>();
    for (const auto& p : j.at("grid"))
        s.grid.push_back(param_point_from_json(p));
    for (const auto& r : j.at("records")) {
        SweepRecord rec;
        rec.grid_index = r.at("grid_index").get<std::size_t>();
        rec.run = r.at("run").get<std::size_t>();
        rec.seed = r.at("seed").get<std::uint64_t>();
        rec.clusters = r.at("clusters").get<std::size_t>();
        rec.noise = r.at("noise").get<std::size_t>();
        rec.dbcv = r.at("dbcv").get<double>();
        rec.seconds = r.at("seconds").get<double>();
        if (!r.at("ari").is_null())
            rec.ari = r.at("ari").get<double>();
        s.records.push_back(rec);
    }
    if (s.records.size() != s.grid.size() * s.runs)
        throw std::invalid_argument("sweep document has " + std::to_string(s.records.size()) +
                                    " records, expected " + std::to_string(s.grid.size() * s.runs));
    return s;
}

json to_json(const BenchResult& b) {
    return {{"schema", "rnnclust.bench"},
            {"schema_version", kSchemaVersion},
            {"dataset", b.dataset},
            {"synthetic", b.synthetic},
            {"params", to_json(b.params)},
            {"seconds", b.seconds},
            {"timing", summary_json(b.timing)}};
}

BenchResult bench_from_json(const json& j) {
    check_schema(j, "rnnclust.bench");
    BenchResult b;
    b.dataset = j.at("dataset").get<std::string>();
    b.synthetic = j.value("synthetic", false);
    b.params = param_point_from_json(j.at("params"));
    b.seconds = j.at("seconds").get<std::vector<double>>();
    b.timing = summary_from_json(j.at("timing"));
    return b;
}

json to_json(const std::vector<RunReport>& reports) {
    json rows = json::array();
    for (const auto& r : reports) {
        json row{{"dataset", r.dataset},
                 {"synthetic", r.synthetic},
                 {"algorithm", to_string(r.algorithm)},
                 {"deterministic", is_deterministic(r.algorithm)},
                 {"runs", r.runs},
                 {"selected_params", to_json(r.selected_params)},
                 {"selected_dbcv", summary_json(r.selected_dbcv)},
                 {"timing", summary_json(r.timing)},
                 {"timing_source", r.timing_from_bench ? "bench" : "sweep"}};
        if (r.has_truth) {
            row["best_ari"] = summary_json(r.best_ari);
            row["best_params"] = to_json(r.best_params);
            row["selected_ari"] = summary_json(r.selected_ari);
        }
        rows.push_back(std::move(row));
    }
    return {{"schema", "rnnclust.report"}, {"schema_version", kSchemaVersion}, {"rows", std::move(rows)}};
}

void write_records_csv(std::ostream& out, const SweepResult& sweep) {
    out << "grid_index,run,seed,params,clusters,noise,dbcv,ari,seconds\n";
    for (const auto& r : sweep.records) {
        out << r.grid_index << ',' << r.run << ',' << r.seed << ',' << describe(sweep.grid[r.grid_index]) << ','
            << r.clusters << ',' << r.noise << ',' << num(r.dbcv, 6) << ',' << (r.ari ? num(*r.ari, 6) : "")
            << ',' << num(r.seconds, 6) << '\n';
    }
}

}  // namespace rnnclust::harness
