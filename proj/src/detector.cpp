#include "relcpd/detector.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <string>

#include "relcpd/error.hpp"
#include "relcpd/kernel.hpp"
#include "relcpd/rng.hpp"

namespace relcpd {

std::string_view to_string(ScoreMode mode) noexcept {
    switch (mode) {
        case ScoreMode::symmetric: return "symmetric";
        case ScoreMode::forward: return "forward";
        case ScoreMode::backward: return "backward";
    }
    return "unknown";
}

ScoreMode parse_score_mode(std::string_view name) {
    if (name == "symmetric") return ScoreMode::symmetric;
    if (name == "forward") return ScoreMode::forward;
    if (name == "backward") return ScoreMode::backward;
    throw Error(ErrorKind::parameter, "unknown score mode '" + std::string(name) +
                                          "' (expected symmetric, forward or backward)");
}

void DetectorConfig::validate() const {
    if (n < 2) throw Error(ErrorKind::parameter, "n must be >= 2");
    if (k < 1) throw Error(ErrorKind::parameter, "k must be >= 1");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw Error(ErrorKind::parameter, "alpha must lie in [0, 1)");
    if (stride < 1) throw Error(ErrorKind::parameter, "stride must be >= 1");
    if (cv_stride < 1) throw Error(ErrorKind::parameter, "cv-stride must be >= 1");
    if (kliep.max_iters < 1 || !(kliep.tolerance > 0)) {
        throw Error(ErrorKind::parameter, "KLIEP needs max_iters >= 1 and tolerance > 0");
    }
    grid.validate(n);
}

Index minimum_length(const DetectorConfig& config) { return 2 * config.n + config.k - 1; }

namespace {

struct Direction {
    bool enabled = false;
    double sigma = 0.0;
    double lambda = 0.0;
};

double effective_alpha(const DetectorConfig& config) {
    return config.estimator == EstimatorKind::rulsif ? config.alpha : 0.0;
}

CvResult select_direction(const Samples& numerator, const Samples& denominator,
                          const DetectorConfig& config, std::uint64_t seed) {
    CvGrid grid = config.grid;
    grid.seed = seed;
    return cv_select(numerator, denominator, grid, config.estimator, effective_alpha(config),
                     Execution::serial);
}

double term(double value, bool clip) { return clip ? std::max(0.0, value) : value; }

}  // namespace

double directional_divergence(const Samples& numerator, const Samples& denominator, double sigma,
                              double lambda, const DetectorConfig& config) {
    const DesignMatrices design =
        design_matrices(numerator, denominator, numerator, sigma, Execution::serial);
    if (config.estimator == EstimatorKind::kliep) {
        const RatioFit fit = kliep_fit(design, config.kliep);
        return kl_from_values(design.k_num * fit.model.theta);
    }
    const double alpha = effective_alpha(config);
    const RatioFit fit = rulsif_fit(design, lambda, alpha);
    return pe_alpha_from_values(design.k_num * fit.model.theta, design.k_den * fit.model.theta,
                                alpha);
}

ScoreSeries change_scores(const TimeSeries& input, const DetectorConfig& config, Execution exec) {
    config.validate();
    input.validate();
    const Index T = input.length();
    if (T < minimum_length(config)) {
        throw Error(ErrorKind::insufficient_data,
                    "series of length " + std::to_string(T) + " is too short; need T >= " +
                        std::to_string(minimum_length(config)) + " (2n + k - 1)");
    }
    const TimeSeries series = config.standardize ? standardized(input) : input;
    const WindowSet windows = build_windows(series, config.k);

    const Index last_t = T - 2 * config.n - config.k + 2;
    const Index positions = (last_t - 1) / config.stride + 1;
    const Index blocks = (positions + config.cv_stride - 1) / config.cv_stride;

    ScoreSeries out;
    out.config = config;
    out.boundaries.resize(static_cast<std::size_t>(positions));
    out.scores.resize(static_cast<std::size_t>(positions));
    std::vector<std::optional<Error>> failures(static_cast<std::size_t>(blocks));

    const bool use_forward = config.score_mode != ScoreMode::backward;
    const bool use_backward = config.score_mode != ScoreMode::forward;

    auto run_block = [&](Index block) {
        Direction fwd{use_forward}, bwd{use_backward};
        const Index first = block * config.cv_stride;
        const Index stop = std::min(positions, first + config.cv_stride);
        Index t = 0;
        try {
            for (Index p = first; p < stop; ++p) {
                t = 1 + p * config.stride;
                const SegmentPair pair = segment_pair(windows, t, config.n);
                if (p == first) {
                    const std::uint64_t pos_seed =
                        derive_seed(config.grid.seed, static_cast<std::uint64_t>(p));
                    if (fwd.enabled) {
                        const CvResult cv =
                            select_direction(pair.reference, pair.test, config, derive_seed(pos_seed, 0));
                        fwd.sigma = cv.best_sigma;
                        fwd.lambda = cv.best_lambda;
                    }
                    if (bwd.enabled) {
                        const CvResult cv =
                            select_direction(pair.test, pair.reference, config, derive_seed(pos_seed, 1));
                        bwd.sigma = cv.best_sigma;
                        bwd.lambda = cv.best_lambda;
                    }
                }
                double score = 0.0;
                if (fwd.enabled) {
                    score += term(directional_divergence(pair.reference, pair.test, fwd.sigma,
                                                         fwd.lambda, config),
                                  config.clip_negative);
                }
                if (bwd.enabled) {
                    score += term(directional_divergence(pair.test, pair.reference, bwd.sigma,
                                                         bwd.lambda, config),
                                  config.clip_negative);
                }
                if (!std::isfinite(score)) {
                    throw Error(ErrorKind::numeric, "non-finite change score");
                }
                out.boundaries[static_cast<std::size_t>(p)] = pair.boundary;
                out.scores[static_cast<std::size_t>(p)] = score;
            }
        } catch (const Error& e) {
            failures[static_cast<std::size_t>(block)] =
                Error(e.kind(), "at t=" + std::to_string(t) + " (boundary " +
                                    std::to_string(t + config.n) + "): " + e.what());
        }
    };

    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (Index b = 0; b < blocks; ++b) run_block(b);
    } else {
        for (Index b = 0; b < blocks; ++b) run_block(b);
    }

    for (const auto& failure : failures) {
        if (failure) throw *failure;
    }
    return out;
}

}  // namespace relcpd
