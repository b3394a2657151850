#pragma once

#include <cstdint>
#include <vector>

#include "relcpd/estimators.hpp"
#include "relcpd/rng.hpp"
#include "relcpd/types.hpp"

namespace relcpd {

struct CvGrid {
    std::vector<double> sigma_factors{0.6, 0.8, 1.0, 1.2, 1.4};  // multiples of d_med
    std::vector<double> lambdas{1e-3, 1e-2, 1e-1, 1e0, 1e1};
    int folds = 5;
    std::uint64_t seed = 0;

    /// Throws parameter error; n is the per-set sample count.
    void validate(Index n) const;
};

struct CvCell {
    double sigma = 0.0;
    double lambda = 0.0;  // 0 for KLIEP, which has no regularizer
    double score = 0.0;   // held-out criterion; +inf/-inf if the cell failed
};

struct CvResult {
    double best_sigma = 0.0;
    double best_lambda = 0.0;
    double median_distance = 0.0;
    /// Row-major over (sigma, lambda) in grid order.
    std::vector<CvCell> score_table;
};

/// Assigns each of n indices to a fold: one seeded shuffle, then contiguous
/// blocks of (almost) equal size.
std::vector<int> assign_folds(Index n, int folds, Rng& rng);

/// Grid cross-validation of (sigma, lambda).
///
/// Kernel centers stay fixed at the full numerator set; folds split the
/// numerator and denominator samples. For uLSIF/RuLSIF the held-out squared
/// loss 0.5 t'H t - h't is minimized; for KLIEP the held-out numerator
/// log-likelihood is maximized. Ties go to the larger sigma, then the larger
/// lambda.
CvResult cv_select(const Samples& numerator, const Samples& denominator, const CvGrid& grid,
                   EstimatorKind kind, double alpha, Execution exec = Execution::serial);

}  // namespace relcpd
