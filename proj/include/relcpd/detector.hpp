#pragma once

#include <string_view>
#include <vector>

#include "relcpd/embedding.hpp"
#include "relcpd/estimators.hpp"
#include "relcpd/model_selection.hpp"

namespace relcpd {

enum class ScoreMode { symmetric, forward, backward };

std::string_view to_string(ScoreMode mode) noexcept;
ScoreMode parse_score_mode(std::string_view name);

struct DetectorConfig {
    Index n = 50;  // samples per segment
    Index k = 10;  // window length
    double alpha = 0.1;
    EstimatorKind estimator = EstimatorKind::rulsif;
    ScoreMode score_mode = ScoreMode::symmetric;
    Index stride = 1;     // time steps between evaluated positions
    Index cv_stride = 1;  // evaluated positions between cross-validation refreshes
    bool clip_negative = true;
    bool standardize = false;
    CvGrid grid;
    KliepOptions kliep;

    void validate() const;
};

/// Scores recorded at segment boundaries t + n (1-based).
struct ScoreSeries {
    std::vector<Index> boundaries;
    std::vector<double> scores;
    DetectorConfig config;
};

/// Shortest series that yields one score: 2n + k - 1.
Index minimum_length(const DetectorConfig& config);

/// One directional divergence estimate with fixed hyper-parameters:
/// PE_alpha for uLSIF/RuLSIF (alpha forced to 0 for uLSIF), KL for KLIEP.
/// Kernel centers are the numerator samples. Unclipped.
double directional_divergence(const Samples& numerator, const Samples& denominator, double sigma,
                              double lambda, const DetectorConfig& config);

/// Sliding symmetric (or one-sided) divergence score over the whole series.
///
/// Positions t = 1, 1 + stride, ... while t + 2n + k - 2 <= T. Cross-validation
/// runs on the first position of every block of cv_stride positions, seeded by
/// mixing the position index into grid.seed, and its selection is reused for
/// the rest of the block. Blocks are independent, so the parallel path (one
/// block per task) reproduces the serial loop exactly.
ScoreSeries change_scores(const TimeSeries& series, const DetectorConfig& config,
                          Execution exec = Execution::parallel);

}  // namespace relcpd
