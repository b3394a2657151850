#pragma once

#include <span>
#include <vector>

#include "relcpd/detector.hpp"
#include "relcpd/types.hpp"

namespace relcpd {

/// Alarms closer than this to the previously kept alarm are dropped.
inline constexpr Index kAlarmDedupGap = 20;
/// An alarm at t is correct if some change point t* has |t - t*| <= radius.
inline constexpr Index kMatchRadius = 10;

struct AlarmList {
    std::vector<Index> times;
    std::vector<double> scores;

    std::size_t size() const noexcept { return times.size(); }
};

/// Local maxima of the score curve, deduplicated.
///
/// Position i is a peak when scores[i] > scores[i-1] and the run of equal
/// values starting at i is followed by a strictly smaller value; a plateau
/// reports its first index. The first and last positions are never peaks.
/// Dedup scans in time order and drops an alarm within kAlarmDedupGap of the
/// last kept one.
AlarmList find_peaks(std::span<const Index> times, std::span<const double> scores);
AlarmList find_peaks(const ScoreSeries& series);

struct AlarmCounts {
    Index correct = 0;  // n_cr
    Index alarms = 0;   // n_al
};

/// Counts alarms with score > threshold and how many of them hit a change
/// point. Greedy in time order; each change point is credited at most once.
AlarmCounts match_and_count(const AlarmList& alarms, std::span<const Index> truths,
                            double threshold);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;

    friend bool operator==(const RocPoint&, const RocPoint&) = default;
};

/// ROC sweep. points[0] = (0, 0) with threshold +inf; point i > 0 admits every
/// alarm whose score is >= thresholds[i], thresholds being the distinct peak
/// scores in decreasing order.
///   TPR = n_cr / n_cp, FPR = (n_al - n_cr) / n_al (0 when n_al = 0).
/// The FPR of this definition need not be monotone along the sweep; the AUC
/// is the trapezoid integral along the sweep order, closed by a horizontal
/// segment at the final TPR out to FPR = 1.
struct RocCurve {
    std::vector<RocPoint> points;
    std::vector<double> thresholds;
    double auc = 0.0;
};

RocCurve roc_curve(const AlarmList& alarms, std::span<const Index> truths, Index n_cp);

/// Trapezoid along the given order plus the terminal extension.
double sweep_auc(std::span<const RocPoint> points);

struct RunSummary {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation; 0 for a single run
};

RunSummary summarize_runs(std::span<const double> values);

}  // namespace relcpd
