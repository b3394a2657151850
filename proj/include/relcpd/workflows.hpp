#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "relcpd/detector.hpp"
#include "relcpd/evaluation.hpp"
#include "relcpd/synthgen.hpp"

namespace relcpd {

inline constexpr int kReportSchema = 1;

using Json = nlohmann::ordered_json;

/// Peaks, ROC and AUC of one scored series against its change points.
struct RunEvaluation {
    AlarmList alarms;
    RocCurve roc;
};

RunEvaluation evaluate_run(const ScoreSeries& scores, const std::vector<Index>& truths);

/// Conventions used to turn scores into alarms, echoed in every report.
Json conventions_json(const DetectorConfig& config);
Json detector_json(const DetectorConfig& config);

/// Report for a single scored series:
/// {schema, dataset, estimator, runs, auc_mean, auc_std, per_run, conventions}.
Json eval_report(const std::string& dataset, const std::string& estimator,
                 const RunEvaluation& run, const DetectorConfig& config);

struct BenchConfig {
    std::vector<int> datasets{1, 2, 3, 4};
    std::vector<EstimatorKind> estimators{EstimatorKind::rulsif, EstimatorKind::ulsif,
                                          EstimatorKind::kliep};
    int runs = 1;
    std::uint64_t seed = 0;
    Index length = 5000;
    Index segment_len = 100;
    /// Template for every cell; estimator and grid.seed are set per cell.
    DetectorConfig detector;
    Execution exec = Execution::parallel;
};

struct BenchCell {
    int dataset = 0;
    EstimatorKind estimator = EstimatorKind::rulsif;
    bool ok = true;
    std::string error;
    std::vector<double> aucs;
    RunSummary summary;
};

struct BenchReport {
    BenchConfig config;
    std::vector<BenchCell> cells;  // sorted by (dataset, estimator order in config)
};

/// Seed of run `run` of dataset `dataset`; shared by every estimator so they
/// score the same series.
std::uint64_t run_seed(std::uint64_t master, int dataset, int run);

/// Runs every (dataset, estimator, run) unit. Units are independent; with
/// Execution::parallel they are spread over OpenMP threads and each detector
/// runs serially inside its unit. A failing unit fails its cell only.
BenchReport run_bench(const BenchConfig& config,
                      const std::function<void(const std::string&)>& progress = {});

Json bench_json(const BenchReport& report);
std::string bench_table(const BenchReport& report);

}  // namespace relcpd
