#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "relcpd/detector.hpp"
#include "relcpd/embedding.hpp"
#include "relcpd/evaluation.hpp"

namespace relcpd {

/// Shortest decimal representation that parses back to the same double.
std::string format_number(double value);

/// Rows are time steps, columns dimensions. An optional single header row is
/// detected by a non-numeric first row. A sidecar `<stem>.truth` next to the
/// file, when present, fills change_points.
TimeSeries ingest_csv(const std::filesystem::path& path);

/// Path of the truth sidecar for a data file: same directory and stem.
std::filesystem::path truth_sidecar(const std::filesystem::path& data_path);

/// One integer per line.
std::vector<Index> read_truth(const std::filesystem::path& path);

void write_series_csv(const std::filesystem::path& path, const TimeSeries& series);
void write_truth(const std::filesystem::path& path, const std::vector<Index>& change_points);

/// Header `boundary,score`.
void write_scores_csv(const std::filesystem::path& path, const ScoreSeries& scores);
ScoreSeries read_scores_csv(const std::filesystem::path& path);

/// Header `time,score`.
void write_alarms_csv(const std::filesystem::path& path, const AlarmList& alarms);
/// Header `threshold,fpr,tpr`.
void write_roc_csv(const std::filesystem::path& path, const RocCurve& curve);

/// Writes text atomically enough for our purposes; throws io errors with the path.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace relcpd
