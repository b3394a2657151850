#include "relcpd/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "relcpd/error.hpp"

namespace relcpd {

AlarmList find_peaks(std::span<const Index> times, std::span<const double> scores) {
    if (times.size() != scores.size()) {
        throw Error(ErrorKind::dimension, "peak search: times and scores differ in length");
    }
    AlarmList peaks;
    const std::size_t m = scores.size();
    for (std::size_t i = 1; i + 1 < m; ++i) {
        if (!(scores[i] > scores[i - 1])) continue;
        std::size_t j = i;
        while (j + 1 < m && scores[j + 1] == scores[i]) ++j;
        if (j + 1 < m && scores[j + 1] < scores[i]) {
            peaks.times.push_back(times[i]);
            peaks.scores.push_back(scores[i]);
        }
        i = j;
    }

    AlarmList kept;
    for (std::size_t a = 0; a < peaks.size(); ++a) {
        if (!kept.times.empty() && peaks.times[a] - kept.times.back() < kAlarmDedupGap) continue;
        kept.times.push_back(peaks.times[a]);
        kept.scores.push_back(peaks.scores[a]);
    }
    return kept;
}

AlarmList find_peaks(const ScoreSeries& series) {
    return find_peaks(series.boundaries, series.scores);
}

namespace {

template <typename Admit>
AlarmCounts count_admitted(const AlarmList& alarms, std::span<const Index> truths, Admit admit) {
    AlarmCounts counts;
    std::vector<bool> credited(truths.size(), false);
    for (std::size_t a = 0; a < alarms.size(); ++a) {
        if (!admit(alarms.scores[a])) continue;
        ++counts.alarms;
        for (std::size_t c = 0; c < truths.size(); ++c) {
            if (!credited[c] && std::abs(alarms.times[a] - truths[c]) <= kMatchRadius) {
                credited[c] = true;
                ++counts.correct;
                break;
            }
        }
    }
    return counts;
}

RocPoint rates(const AlarmCounts& counts, Index n_cp) {
    RocPoint p;
    p.tpr = static_cast<double>(counts.correct) / static_cast<double>(n_cp);
    p.fpr = counts.alarms == 0 ? 0.0
                               : static_cast<double>(counts.alarms - counts.correct) /
                                     static_cast<double>(counts.alarms);
    return p;
}

}  // namespace

AlarmCounts match_and_count(const AlarmList& alarms, std::span<const Index> truths,
                            double threshold) {
    return count_admitted(alarms, truths, [threshold](double s) { return s > threshold; });
}

RocCurve roc_curve(const AlarmList& alarms, std::span<const Index> truths, Index n_cp) {
    if (n_cp < 1) {
        throw Error(ErrorKind::undefined_tpr, "ROC needs at least one true change point");
    }
    std::vector<double> levels = alarms.scores;
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    RocCurve curve;
    curve.points.push_back({0.0, 0.0});
    curve.thresholds.push_back(std::numeric_limits<double>::infinity());
    for (const double level : levels) {
        const auto counts =
            count_admitted(alarms, truths, [level](double s) { return s >= level; });
        curve.points.push_back(rates(counts, n_cp));
        curve.thresholds.push_back(level);
    }
    curve.auc = sweep_auc(curve.points);
    return curve;
}

double sweep_auc(std::span<const RocPoint> points) {
    if (points.empty()) return 0.0;
    double area = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        area += (points[i].fpr - points[i - 1].fpr) * (points[i].tpr + points[i - 1].tpr) / 2.0;
    }
    area += (1.0 - points.back().fpr) * points.back().tpr;
    return area;
}

RunSummary summarize_runs(std::span<const double> values) {
    if (values.empty()) throw Error(ErrorKind::empty_input, "no runs to summarize");
    RunSummary s;
    double sum = 0.0;
    for (double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() > 1) {
        double sq = 0.0;
        for (double v : values) sq += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(sq / static_cast<double>(values.size() - 1));
    }
    return s;
}

}  // namespace relcpd
