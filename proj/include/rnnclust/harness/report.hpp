#pragma once

#include "rnnclust/harness/bench.hpp"
#include "rnnclust/harness/sweep.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace rnnclust::harness {

inline constexpr int kSchemaVersion = 1;

/// Per dataset and algorithm: the best ARI any grid point reached, the ARI of the grid
/// point chosen by DBCV, and timing. Seeded algorithms aggregate over replicate runs.
struct RunReport {
    std::string dataset;
    bool synthetic = false;
    Algorithm algorithm = Algorithm::dbscrn;
    std::size_t runs = 1;
    bool has_truth = false;

    Summary best_ari;              // per run: max ARI over the grid
    ParamPoint best_params;        // argmax of the first run
    Summary selected_ari;          // per run: ARI at the highest DBCV
    Summary selected_dbcv;
    ParamPoint selected_params;    // DBCV choice of the first run
    Summary timing;                // seconds; from a bench when attached, else the sweep
    bool timing_from_bench = false;
};

RunReport summarize(const SweepResult& sweep);
/// Replaces the sweep-derived timing with benchmark samples.
void attach_timing(RunReport& report, const BenchResult& bench);

/// ARI tables: best possible and DBCV-selected. Deterministic algorithms print "-" for
/// mean and standard deviation.
void write_best_ari_csv(std::ostream& out, const std::vector<RunReport>& reports);
void write_selected_ari_csv(std::ostream& out, const std::vector<RunReport>& reports);
/// Timing table with Mean, Std dev, Max, Min columns.
void write_timing_csv(std::ostream& out, const std::vector<RunReport>& reports);
void write_summary(std::ostream& out, const std::vector<RunReport>& reports);

/// Writes the three CSV tables, report.json and summary.txt into `directory`.
void write_report_files(const std::string& directory, const std::vector<RunReport>& reports);

nlohmann::json to_json(const ParamPoint& p);
ParamPoint param_point_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SweepResult& sweep);
SweepResult sweep_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BenchResult& bench);
BenchResult bench_from_json(const nlohmann::json& j);
nlohmann::json to_json(const std::vector<RunReport>& reports);

/// One line per record: grid index, run, parameters, clusters, noise, dbcv, ari, seconds.
void write_records_csv(std::ostream& out, const SweepResult& sweep);

}  // namespace rnnclust::harness
