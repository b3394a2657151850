#include "relcpd/model_selection.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "relcpd/error.hpp"
#include "relcpd/kernel.hpp"

namespace relcpd {

namespace {

Matrix select_rows(const Matrix& m, const std::vector<Index>& rows) {
    Matrix out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t r = 0; r < rows.size(); ++r) out.row(static_cast<Index>(r)) = m.row(rows[r]);
    return out;
}

struct FoldRows {
    std::vector<Index> num_train, num_hold, den_train, den_hold;
};

std::vector<FoldRows> split_folds(const std::vector<int>& num_fold, const std::vector<int>& den_fold,
                                  int folds) {
    std::vector<FoldRows> out(static_cast<std::size_t>(folds));
    for (int f = 0; f < folds; ++f) {
        auto& rows = out[static_cast<std::size_t>(f)];
        for (std::size_t i = 0; i < num_fold.size(); ++i) {
            (num_fold[i] == f ? rows.num_hold : rows.num_train).push_back(static_cast<Index>(i));
        }
        for (std::size_t j = 0; j < den_fold.size(); ++j) {
            (den_fold[j] == f ? rows.den_hold : rows.den_train).push_back(static_cast<Index>(j));
        }
    }
    return out;
}

// Mean held-out squared loss for every lambda at one sigma.
std::vector<double> lsif_cell_scores(const DesignMatrices& design, const std::vector<FoldRows>& folds,
                                     const std::vector<double>& lambdas, double alpha) {
    std::vector<double> totals(lambdas.size(), 0.0);
    for (const auto& rows : folds) {
        DesignMatrices train{select_rows(design.k_num, rows.num_train),
                             select_rows(design.k_den, rows.den_train), design.centers,
                             design.sigma};
        DesignMatrices hold{select_rows(design.k_num, rows.num_hold),
                            select_rows(design.k_den, rows.den_hold), design.centers, design.sigma};
        const LsifSystem train_sys = lsif_system(train, alpha);
        const LsifSystem hold_sys = lsif_system(hold, alpha);
        for (std::size_t c = 0; c < lambdas.size(); ++c) {
            if (!std::isfinite(totals[c])) continue;
            try {
                const Vector theta = solve_regularized(train_sys.H, train_sys.h, lambdas[c]);
                totals[c] += lsif_objective(hold_sys, theta);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::singular_system) throw;
                totals[c] = std::numeric_limits<double>::infinity();
            }
        }
    }
    for (double& t : totals) t /= static_cast<double>(folds.size());
    return totals;
}

double kliep_cell_score(const DesignMatrices& design, const std::vector<FoldRows>& folds) {
    double total = 0.0;
    for (const auto& rows : folds) {
        DesignMatrices train{select_rows(design.k_num, rows.num_train),
                             select_rows(design.k_den, rows.den_train), design.centers,
                             design.sigma};
        const RatioFit fit = kliep_fit(train);
        total += kliep_objective(select_rows(design.k_num, rows.num_hold), fit.model.theta);
    }
    return total / static_cast<double>(folds.size());
}

}  // namespace

void CvGrid::validate(Index n) const {
    if (sigma_factors.empty() || lambdas.empty()) {
        throw Error(ErrorKind::parameter, "cross-validation grid must be non-empty");
    }
    for (double s : sigma_factors) {
        if (!(s > 0) || !std::isfinite(s)) throw Error(ErrorKind::parameter, "sigma factors must be positive");
    }
    for (double l : lambdas) {
        if (!(l > 0) || !std::isfinite(l)) throw Error(ErrorKind::parameter, "lambdas must be positive");
    }
    if (folds < 2 || folds > n) {
        throw Error(ErrorKind::parameter, "folds must lie in [2, n]; got folds=" +
                                              std::to_string(folds) + ", n=" + std::to_string(n));
    }
}

std::vector<int> assign_folds(Index n, int folds, Rng& rng) {
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    rng.shuffle(std::span<Index>(order));
    std::vector<int> fold(static_cast<std::size_t>(n));
    for (Index p = 0; p < n; ++p) {
        fold[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])] =
            static_cast<int>(p * folds / n);
    }
    return fold;
}

CvResult cv_select(const Samples& numerator, const Samples& denominator, const CvGrid& grid,
                   EstimatorKind kind, double alpha, Execution exec) {
    grid.validate(std::min(numerator.rows(), denominator.rows()));
    if (numerator.cols() != denominator.cols()) {
        throw Error(ErrorKind::dimension, "numerator and denominator widths differ");
    }
    const bool lsif = kind != EstimatorKind::kliep;
    const double fit_alpha = kind == EstimatorKind::rulsif ? alpha : 0.0;

    Samples pooled(numerator.rows() + denominator.rows(), numerator.cols());
    pooled << numerator, denominator;

    CvResult result;
    result.median_distance = median_distance(pooled, Execution::serial);

    Rng rng(grid.seed);
    const auto num_fold = assign_folds(numerator.rows(), grid.folds, rng);
    const auto den_fold = assign_folds(denominator.rows(), grid.folds, rng);
    const auto folds = split_folds(num_fold, den_fold, grid.folds);

    const DistanceCache cache(numerator, denominator, numerator, Execution::serial);
    const std::size_t n_sigma = grid.sigma_factors.size();
    const std::size_t n_lambda = lsif ? grid.lambdas.size() : 1;
    result.score_table.resize(n_sigma * n_lambda);

    auto evaluate_sigma = [&](std::size_t s) {
        const double sigma = grid.sigma_factors[s] * result.median_distance;
        const DesignMatrices design = cache.design(sigma);
        if (lsif) {
            const auto scores = lsif_cell_scores(design, folds, grid.lambdas, fit_alpha);
            for (std::size_t c = 0; c < n_lambda; ++c) {
                result.score_table[s * n_lambda + c] = CvCell{sigma, grid.lambdas[c], scores[c]};
            }
        } else {
            result.score_table[s] = CvCell{sigma, 0.0, kliep_cell_score(design, folds)};
        }
    };
    const auto n_sigma_i = static_cast<std::ptrdiff_t>(n_sigma);
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t s = 0; s < n_sigma_i; ++s) evaluate_sigma(static_cast<std::size_t>(s));
    } else {
        for (std::ptrdiff_t s = 0; s < n_sigma_i; ++s) evaluate_sigma(static_cast<std::size_t>(s));
    }

    // Orientation: lower is better for LSIF, higher for KLIEP.
    auto better = [&](const CvCell& a, const CvCell& b) {
        const double sa = lsif ? -a.score : a.score;
        const double sb = lsif ? -b.score : b.score;
        if (sa != sb) return sa > sb;
        if (a.sigma != b.sigma) return a.sigma > b.sigma;
        return a.lambda > b.lambda;
    };
    const CvCell* best = nullptr;
    for (const auto& cell : result.score_table) {
        if (std::isnan(cell.score) || std::isinf(cell.score)) continue;
        if (best == nullptr || better(cell, *best)) best = &cell;
    }
    if (best == nullptr) {
        throw Error(ErrorKind::singular_system, "every cross-validation cell failed");
    }
    result.best_sigma = best->sigma;
    result.best_lambda = best->lambda;
    return result;
}

}  // namespace relcpd
