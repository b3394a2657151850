// relcpd: change-point scoring by relative density-ratio estimation.
//
//   relcpd synth  --dataset 1 --seed 7 --out data/ds1
//   relcpd score  data/ds1.csv --estimator rulsif --out ds1.scores.csv
//   relcpd detect data/ds1.csv --stride 5 --cv-stride 5 --out results/ds1
//   relcpd eval   --scores ds1.scores.csv --truth data/ds1.truth --out results/ds1
//   relcpd bench  --datasets 1,3 --runs 10 --seed 3 --out table1.json

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>

#include "relcpd/detector.hpp"
#include "relcpd/error.hpp"
#include "relcpd/evaluation.hpp"
#include "relcpd/io.hpp"
#include "relcpd/synthgen.hpp"
#include "relcpd/workflows.hpp"

namespace fs = std::filesystem;
using namespace relcpd;

namespace {

struct DetectorFlags {
    Index n = 50;
    Index k = 10;
    double alpha = 0.1;
    std::string estimator = "rulsif";
    std::string score_mode = "symmetric";
    Index stride = 1;
    Index cv_stride = 1;
    bool no_clip = false;
    bool standardize = false;
    std::vector<double> sigma_factors{0.6, 0.8, 1.0, 1.2, 1.4};
    std::vector<double> lambdas{1e-3, 1e-2, 1e-1, 1e0, 1e1};
    int folds = 5;
    std::uint64_t seed = 0;
    bool serial = false;
    int threads = 0;

    void add_to(CLI::App& app, bool with_estimator = true) {
        app.add_option("--n", n, "Samples per segment")->capture_default_str();
        app.add_option("--k", k, "Subsequence window length")->capture_default_str();
        app.add_option("--alpha", alpha, "Relative parameter for RuLSIF, in [0, 1)")->capture_default_str();
        if (with_estimator) {
            app.add_option("--estimator", estimator, "rulsif | ulsif | kliep")->capture_default_str();
        }
        app.add_option("--score-mode", score_mode, "symmetric | forward | backward")->capture_default_str();
        app.add_option("--stride", stride, "Time steps between scored positions")->capture_default_str();
        app.add_option("--cv-stride", cv_stride, "Scored positions between CV refreshes")->capture_default_str();
        app.add_flag("--no-clip", no_clip, "Keep negative per-direction estimates");
        app.add_flag("--standardize", standardize, "Z-score each dimension before embedding");
        app.add_option("--sigma-factors", sigma_factors, "Kernel widths as multiples of the median distance")
            ->delimiter(',')
            ->capture_default_str();
        app.add_option("--lambdas", lambdas, "Regularization candidates")->delimiter(',')->capture_default_str();
        app.add_option("--folds", folds, "Cross-validation folds")->capture_default_str();
        app.add_option("--seed", seed, "Master seed")->capture_default_str();
        app.add_flag("--serial", serial, "Use the serial reference loops");
        app.add_option("--threads", threads, "OpenMP threads (0 = runtime default)");
    }

    DetectorConfig config() const {
        DetectorConfig c;
        c.n = n;
        c.k = k;
        c.alpha = alpha;
        c.estimator = parse_estimator(estimator);
        c.score_mode = parse_score_mode(score_mode);
        c.stride = stride;
        c.cv_stride = cv_stride;
        c.clip_negative = !no_clip;
        c.standardize = standardize;
        c.grid.sigma_factors = sigma_factors;
        c.grid.lambdas = lambdas;
        c.grid.folds = folds;
        c.grid.seed = seed;
        c.validate();
        return c;
    }

    Execution execution() const {
        if (threads > 0) omp_set_num_threads(threads);
        return serial ? Execution::serial : Execution::parallel;
    }
};

fs::path with_suffix(const fs::path& prefix, const std::string& suffix) {
    return fs::path(prefix.string() + suffix);
}

fs::path default_prefix(const fs::path& input) {
    return input.parent_path() / input.stem();
}

void write_evaluation(const fs::path& prefix, const std::string& dataset,
                      const std::string& estimator, const RunEvaluation& run,
                      const DetectorConfig& config) {
    write_alarms_csv(with_suffix(prefix, ".alarms.csv"), run.alarms);
    write_roc_csv(with_suffix(prefix, ".roc.csv"), run.roc);
    write_text(with_suffix(prefix, ".eval.json"),
               eval_report(dataset, estimator, run, config).dump(2) + "\n");
}

std::vector<EstimatorKind> parse_estimators(const std::vector<std::string>& names) {
    std::vector<EstimatorKind> out;
    for (const auto& name : names) out.push_back(parse_estimator(name));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Change-point detection by relative density-ratio estimation"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "Generate a benchmark dataset (CSV + truth sidecar)");
    SynthSpec synth_spec;
    std::string synth_out;
    synth->add_option("--dataset", synth_spec.dataset_id, "Dataset 1-4")->required();
    synth->add_option("--seed", synth_spec.seed, "Seed")->capture_default_str();
    synth->add_option("--length", synth_spec.length, "Series length")->capture_default_str();
    synth->add_option("--segment-len", synth_spec.segment_len, "Steps between change points")
        ->capture_default_str();
    synth->add_option("--out", synth_out, "Output prefix (writes <out>.csv and <out>.truth)");

    // score
    auto* score = app.add_subcommand("score", "Write the change-point score of a CSV series");
    std::string score_input, score_out;
    DetectorFlags score_flags;
    score->add_option("input", score_input, "Input CSV")->required()->check(CLI::ExistingFile);
    score->add_option("--out", score_out, "Scores CSV (default <input stem>.scores.csv)");
    score_flags.add_to(*score);

    // detect
    auto* detect = app.add_subcommand("detect", "Score a series, extract alarms, and evaluate against its truth sidecar");
    std::string detect_input, detect_out;
    DetectorFlags detect_flags;
    detect->add_option("input", detect_input, "Input CSV")->required()->check(CLI::ExistingFile);
    detect->add_option("--out", detect_out, "Output prefix (default <input stem>)");
    detect_flags.add_to(*detect);

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a scores CSV against change points");
    std::string eval_scores, eval_truth, eval_out, eval_label = "unknown";
    eval->add_option("--scores", eval_scores, "Scores CSV (boundary,score)")->required()->check(CLI::ExistingFile);
    eval->add_option("--truth", eval_truth, "Truth file, one index per line")->required()->check(CLI::ExistingFile);
    eval->add_option("--out", eval_out, "Output prefix (default <scores stem>)");
    eval->add_option("--estimator", eval_label, "Estimator label for the report");

    // bench
    auto* bench = app.add_subcommand("bench", "AUC table over seeded benchmark datasets");
    std::vector<int> bench_datasets{1, 2, 3, 4};
    std::vector<std::string> bench_estimators{"rulsif", "ulsif", "kliep"};
    int bench_runs = 1;
    Index bench_length = 5000, bench_segment = 100;
    std::string bench_out;
    DetectorFlags bench_flags;
    bench->add_option("--datasets", bench_datasets, "Datasets")->delimiter(',')->capture_default_str();
    bench->add_option("--estimators", bench_estimators, "Estimators")->delimiter(',')->capture_default_str();
    bench->add_option("--runs", bench_runs, "Seeded runs per cell")->capture_default_str();
    bench->add_option("--length", bench_length, "Series length")->capture_default_str();
    bench->add_option("--segment-len", bench_segment, "Steps between change points")->capture_default_str();
    bench->add_option("--out", bench_out, "JSON report path (default stdout)");
    bench->add_flag("--quiet", "No progress on stderr");
    bench_flags.add_to(*bench, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::fprintf(stderr, "error: usage: %s\n", e.what());
        return 64;
    }

    try {
        if (*synth) {
            if (synth_out.empty()) synth_out = "dataset" + std::to_string(synth_spec.dataset_id);
            const TimeSeries series = generate(synth_spec);
            write_series_csv(with_suffix(synth_out, ".csv"), series);
            write_truth(with_suffix(synth_out, ".truth"), series.change_points);
        } else if (*score) {
            const DetectorConfig config = score_flags.config();
            const Execution exec = score_flags.execution();
            const TimeSeries series = ingest_csv(score_input);
            const fs::path out = score_out.empty()
                                     ? with_suffix(default_prefix(score_input), ".scores.csv")
                                     : fs::path(score_out);
            write_scores_csv(out, change_scores(series, config, exec));
        } else if (*detect) {
            const DetectorConfig config = detect_flags.config();
            const Execution exec = detect_flags.execution();
            const TimeSeries series = ingest_csv(detect_input);
            const fs::path prefix = detect_out.empty() ? default_prefix(detect_input) : fs::path(detect_out);
            const ScoreSeries scores = change_scores(series, config, exec);
            write_scores_csv(with_suffix(prefix, ".scores.csv"), scores);
            if (!series.change_points.empty()) {
                const RunEvaluation run = evaluate_run(scores, series.change_points);
                write_evaluation(prefix, series.name, std::string(to_string(config.estimator)), run, config);
                std::printf("auc %s\n", format_number(run.roc.auc).c_str());
            } else {
                write_alarms_csv(with_suffix(prefix, ".alarms.csv"), find_peaks(scores));
            }
        } else if (*eval) {
            ScoreSeries scores = read_scores_csv(eval_scores);
            const auto truths = read_truth(eval_truth);
            DetectorConfig config;
            if (scores.boundaries.size() > 1) config.stride = scores.boundaries[1] - scores.boundaries[0];
            const fs::path prefix = eval_out.empty() ? default_prefix(eval_scores) : fs::path(eval_out);
            const RunEvaluation run = evaluate_run(scores, truths);
            write_evaluation(prefix, fs::path(eval_scores).stem().string(), eval_label, run, config);
            std::printf("auc %s\n", format_number(run.roc.auc).c_str());
        } else if (*bench) {
            BenchConfig config;
            config.datasets = bench_datasets;
            config.estimators = parse_estimators(bench_estimators);
            config.runs = bench_runs;
            config.seed = bench_flags.seed;
            config.length = bench_length;
            config.segment_len = bench_segment;
            config.detector = bench_flags.config();
            config.exec = bench_flags.execution();
            const bool quiet = bench->count("--quiet") > 0;
            const BenchReport report = run_bench(config, [quiet](const std::string& msg) {
                if (!quiet) std::fprintf(stderr, "%s\n", msg.c_str());
            });
            const std::string json = bench_json(report).dump(2) + "\n";
            if (bench_out.empty()) {
                std::fputs(json.c_str(), stdout);
                std::fputs(bench_table(report).c_str(), stderr);
            } else {
                write_text(bench_out, json);
                std::fputs(bench_table(report).c_str(), stdout);
            }
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s: %s\n", std::string(to_string(e.kind())).c_str(), e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: internal: %s\n", e.what());
        return 3;
    }
    return 0;
}
