#pragma once

#include <string_view>
#include <vector>

#include "relcpd/kernel.hpp"
#include "relcpd/types.hpp"

namespace relcpd {

enum class EstimatorKind { rulsif, ulsif, kliep };

std::string_view to_string(EstimatorKind kind) noexcept;
/// Accepts "rulsif", "ulsif", "kliep" (case-sensitive). Throws parameter error.
EstimatorKind parse_estimator(std::string_view name);

/// Kernel density-ratio model g(y) = sum_l theta_l K(y, c_l).
struct RatioModel {
    Samples centers;
    Vector theta;
    double sigma = 1.0;
    double alpha = 0.0;  // 0 for plain uLSIF and for KLIEP

    /// g at a single point. Throws dimension error on width mismatch.
    double operator()(const Eigen::Ref<const Eigen::RowVectorXd>& y) const;
    /// g at every row of `samples`.
    Vector evaluate(const Samples& samples) const;
};

inline double ratio_eval(const RatioModel& model,
                         const Eigen::Ref<const Eigen::RowVectorXd>& y) {
    return model(y);
}

struct FitDiagnostics {
    double objective_value = 0.0;
    int iterations = 0;
    bool converged = true;
    /// Objective after each accepted iteration (KLIEP only; starts with the
    /// value at the initial point).
    std::vector<double> objective_trace;
};

struct RatioFit {
    RatioModel model;
    FitDiagnostics diagnostics;
};

/// (1/m) K^T K for an m x b design matrix. The serial path is the reference
/// loop; the parallel path splits columns across threads with the same
/// summation order, so both agree bit for bit.
Matrix mean_outer_product(const Matrix& design, Execution exec = Execution::serial);

/// Quadratic system of the squared-loss fit:
///   H = alpha * mean_outer(K_num) + (1 - alpha) * mean_outer(K_den)
///   h = column means of K_num
struct LsifSystem {
    Matrix H;
    Vector h;
};

LsifSystem lsif_system(const DesignMatrices& design, double alpha,
                       Execution exec = Execution::serial);

/// Solves (H + lambda I) theta = h by Cholesky. Retries once with a small
/// diagonal jitter, then throws singular-system.
Vector solve_regularized(const Matrix& H, const Vector& h, double lambda);

/// Squared-loss objective 0.5 theta' H theta - h' theta (no regularizer).
double lsif_objective(const LsifSystem& system, const Vector& theta);

RatioFit ulsif_fit(const DesignMatrices& design, double lambda);
RatioFit rulsif_fit(const DesignMatrices& design, double lambda, double alpha);

struct KliepOptions {
    double tolerance = 1e-6;
    int max_iters = 500;
};

/// Floor applied to g before taking logs.
inline constexpr double kLogFloor = 1e-12;

/// (1/n) sum_i log max(eps, (K_num theta)_i).
double kliep_objective(const Matrix& k_num, const Vector& theta);
/// Gradient of kliep_objective; zero contribution from floored rows.
Vector kliep_gradient(const Matrix& k_num, const Vector& theta);

/// Projected gradient ascent on the KLIEP problem: maximize the numerator
/// log-likelihood subject to theta >= 0 and mean_j g(Y'_j) = 1.
RatioFit kliep_fit(const DesignMatrices& design, const KliepOptions& options = {});

/// alpha-relative Pearson divergence estimate from model values at the
/// numerator and denominator samples. Raw value; may be negative.
double pe_alpha_from_values(const Vector& g_num, const Vector& g_den, double alpha);
double pe_alpha_estimate(const RatioModel& model, const Samples& numerator,
                         const Samples& denominator);

/// KL estimate (1/n) sum_i log max(eps, g(Y_i)).
double kl_from_values(const Vector& g_num);
double kl_estimate(const RatioModel& model, const Samples& numerator);

}  // namespace relcpd
