#include "relcpd/workflows.hpp"

#include <cstdio>
#include <optional>

#include "relcpd/error.hpp"
#include "relcpd/rng.hpp"

namespace relcpd {

RunEvaluation evaluate_run(const ScoreSeries& scores, const std::vector<Index>& truths) {
    RunEvaluation out;
    out.alarms = find_peaks(scores);
    out.roc = roc_curve(out.alarms, truths, static_cast<Index>(truths.size()));
    return out;
}

Json conventions_json(const DetectorConfig& config) {
    Json j;
    j["time_indexing"] = "1-based";
    j["score_alignment"] = "boundary t+n (first window of the test segment)";
    j["stride"] = config.stride;
    j["alarm_dedup_gap"] = kAlarmDedupGap;
    j["match_radius"] = kMatchRadius;
    j["auc"] = "trapezoid along threshold sweep, extended to fpr=1 at final tpr";
    return j;
}

Json detector_json(const DetectorConfig& config) {
    Json j;
    j["n"] = config.n;
    j["k"] = config.k;
    j["alpha"] = config.alpha;
    j["estimator"] = std::string(to_string(config.estimator));
    j["score_mode"] = std::string(to_string(config.score_mode));
    j["stride"] = config.stride;
    j["cv_stride"] = config.cv_stride;
    j["clip_negative"] = config.clip_negative;
    j["standardize"] = config.standardize;
    j["sigma_factors"] = config.grid.sigma_factors;
    j["lambdas"] = config.grid.lambdas;
    j["folds"] = config.grid.folds;
    j["seed"] = config.grid.seed;
    return j;
}

Json eval_report(const std::string& dataset, const std::string& estimator,
                 const RunEvaluation& run, const DetectorConfig& config) {
    Json j;
    j["schema"] = kReportSchema;
    j["dataset"] = dataset;
    j["estimator"] = estimator;
    j["runs"] = 1;
    j["auc_mean"] = run.roc.auc;
    j["auc_std"] = 0.0;
    Json per_run;
    per_run["run"] = 0;
    per_run["auc"] = run.roc.auc;
    per_run["alarms"] = run.alarms.size();
    j["per_run"] = Json::array({per_run});
    j["detector"] = detector_json(config);
    j["conventions"] = conventions_json(config);
    return j;
}

std::uint64_t run_seed(std::uint64_t master, int dataset, int run) {
    return derive_seed(derive_seed(master, static_cast<std::uint64_t>(dataset)),
                       static_cast<std::uint64_t>(run));
}

BenchReport run_bench(const BenchConfig& config,
                      const std::function<void(const std::string&)>& progress) {
    if (config.runs < 1) throw Error(ErrorKind::parameter, "runs must be >= 1");
    if (config.datasets.empty() || config.estimators.empty()) {
        throw Error(ErrorKind::parameter, "bench needs at least one dataset and one estimator");
    }
    for (const int d : config.datasets) {
        SynthSpec{d, config.length, config.segment_len, 0}.validate();
    }
    config.detector.validate();

    struct Unit {
        std::size_t cell;
        int run;
    };
    BenchReport report;
    report.config = config;
    std::vector<Unit> units;
    for (const int d : config.datasets) {
        for (const auto e : config.estimators) {
            BenchCell cell;
            cell.dataset = d;
            cell.estimator = e;
            cell.aucs.assign(static_cast<std::size_t>(config.runs), 0.0);
            report.cells.push_back(cell);
            for (int r = 0; r < config.runs; ++r) units.push_back({report.cells.size() - 1, r});
        }
    }
    std::vector<std::optional<std::string>> failures(units.size());

    auto run_unit = [&](std::size_t u) {
        const Unit& unit = units[u];
        const BenchCell& cell = report.cells[unit.cell];
        const std::uint64_t seed = run_seed(config.seed, cell.dataset, unit.run);
        try {
            const TimeSeries series =
                generate(SynthSpec{cell.dataset, config.length, config.segment_len, seed});
            DetectorConfig det = config.detector;
            det.estimator = cell.estimator;
            det.grid.seed = derive_seed(seed, 0xC0FFEE);
            const ScoreSeries scores = change_scores(series, det, Execution::serial);
            report.cells[unit.cell].aucs[static_cast<std::size_t>(unit.run)] =
                evaluate_run(scores, series.change_points).roc.auc;
        } catch (const std::exception& e) {
            failures[u] = "run " + std::to_string(unit.run) + ": " + e.what();
        }
        if (progress) {
#pragma omp critical(relcpd_bench_progress)
            progress("dataset " + std::to_string(cell.dataset) + " " +
                     std::string(to_string(cell.estimator)) + " run " + std::to_string(unit.run) +
                     (failures[u] ? " failed" : " done"));
        }
    };

    const auto n_units = static_cast<std::ptrdiff_t>(units.size());
    if (config.exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t u = 0; u < n_units; ++u) run_unit(static_cast<std::size_t>(u));
    } else {
        for (std::ptrdiff_t u = 0; u < n_units; ++u) run_unit(static_cast<std::size_t>(u));
    }

    for (std::size_t u = 0; u < units.size(); ++u) {
        if (!failures[u]) continue;
        BenchCell& cell = report.cells[units[u].cell];
        if (cell.ok) {
            cell.ok = false;
            cell.error = *failures[u];
        }
    }
    for (auto& cell : report.cells) {
        if (cell.ok) cell.summary = summarize_runs(cell.aucs);
    }
    return report;
}

Json bench_json(const BenchReport& report) {
    const BenchConfig& c = report.config;
    Json j;
    j["schema"] = kReportSchema;
    j["seed"] = c.seed;
    j["runs"] = c.runs;
    j["length"] = c.length;
    j["segment_len"] = c.segment_len;
    Json det = detector_json(c.detector);
    det.erase("estimator");
    det.erase("seed");
    j["detector"] = det;
    j["conventions"] = conventions_json(c.detector);
    Json cells = Json::array();
    for (const auto& cell : report.cells) {
        Json jc;
        jc["dataset"] = cell.dataset;
        jc["estimator"] = std::string(to_string(cell.estimator));
        jc["runs"] = c.runs;
        jc["status"] = cell.ok ? "ok" : "failed";
        if (cell.ok) {
            jc["auc_mean"] = cell.summary.mean;
            jc["auc_std"] = cell.summary.stddev;
            jc["per_run"] = cell.aucs;
        } else {
            jc["error"] = cell.error;
        }
        cells.push_back(std::move(jc));
    }
    j["cells"] = std::move(cells);
    return j;
}

std::string bench_table(const BenchReport& report) {
    std::string out = "dataset  estimator  auc_mean  auc_std  runs\n";
    char line[128];
    for (const auto& cell : report.cells) {
        if (cell.ok) {
            std::snprintf(line, sizeof(line), "%-8d %-10s %8.3f %8.3f %5d\n", cell.dataset,
                          std::string(to_string(cell.estimator)).c_str(), cell.summary.mean,
                          cell.summary.stddev, report.config.runs);
        } else {
            std::snprintf(line, sizeof(line), "%-8d %-10s   failed\n", cell.dataset,
                          std::string(to_string(cell.estimator)).c_str());
        }
        out += line;
    }
    return out;
}

}  // namespace relcpd
