#include "relcpd/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "relcpd/error.hpp"

namespace relcpd {

std::string_view to_string(EstimatorKind kind) noexcept {
    switch (kind) {
        case EstimatorKind::rulsif: return "rulsif";
        case EstimatorKind::ulsif: return "ulsif";
        case EstimatorKind::kliep: return "kliep";
    }
    return "unknown";
}

EstimatorKind parse_estimator(std::string_view name) {
    if (name == "rulsif") return EstimatorKind::rulsif;
    if (name == "ulsif") return EstimatorKind::ulsif;
    if (name == "kliep") return EstimatorKind::kliep;
    throw Error(ErrorKind::parameter, "unknown estimator '" + std::string(name) +
                                          "' (expected rulsif, ulsif or kliep)");
}

double RatioModel::operator()(const Eigen::Ref<const Eigen::RowVectorXd>& y) const {
    if (y.size() != centers.cols()) {
        throw Error(ErrorKind::dimension, "ratio model expects vectors of length " +
                                              std::to_string(centers.cols()) + ", got " +
                                              std::to_string(y.size()));
    }
    double g = 0.0;
    for (Index l = 0; l < centers.rows(); ++l) {
        g += theta[l] * gaussian_kernel(y, centers.row(l), sigma);
    }
    return g;
}

Vector RatioModel::evaluate(const Samples& samples) const {
    if (samples.cols() != centers.cols()) {
        throw Error(ErrorKind::dimension, "ratio model expects vectors of length " +
                                              std::to_string(centers.cols()) + ", got " +
                                              std::to_string(samples.cols()));
    }
    return gaussian_from_squared(squared_distances(samples, centers, Execution::serial), sigma) *
           theta;
}

Matrix mean_outer_product(const Matrix& design, Execution exec) {
    const Index m = design.rows();
    const Index b = design.cols();
    Matrix out(b, b);
    const double inv = 1.0 / static_cast<double>(m);
    auto fill_column = [&](Index l) {
        for (Index q = l; q < b; ++q) {
            double acc = 0.0;
            for (Index j = 0; j < m; ++j) acc += design(j, l) * design(j, q);
            out(l, q) = acc * inv;
            out(q, l) = out(l, q);
        }
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 4)
        for (Index l = 0; l < b; ++l) fill_column(l);
    } else {
        for (Index l = 0; l < b; ++l) fill_column(l);
    }
    return out;
}

LsifSystem lsif_system(const DesignMatrices& design, double alpha, Execution exec) {
    if (!(alpha >= 0.0 && alpha < 1.0)) {
        throw Error(ErrorKind::parameter, "alpha must lie in [0, 1), got " + std::to_string(alpha));
    }
    const Index b = design.centers.rows();
    if (design.k_num.cols() != b || design.k_den.cols() != b || design.k_num.rows() < 1 ||
        design.k_den.rows() < 1) {
        throw Error(ErrorKind::dimension, "design matrices do not match the number of centers");
    }
    LsifSystem sys;
    sys.H = mean_outer_product(design.k_den, exec);
    if (alpha > 0.0) {
        sys.H = alpha * mean_outer_product(design.k_num, exec) + (1.0 - alpha) * sys.H;
    }
    sys.h = design.k_num.colwise().mean().transpose();
    return sys;
}

Vector solve_regularized(const Matrix& H, const Vector& h, double lambda) {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw Error(ErrorKind::parameter, "lambda must be finite and >= 0");
    }
    const Index b = H.rows();
    Matrix A = H;
    A.diagonal().array() += lambda;

    auto attempt = [&](const Matrix& system, Vector& theta) {
        Eigen::LLT<Matrix> llt(system);
        if (llt.info() != Eigen::Success) return false;
        theta = llt.solve(h);
        return theta.allFinite();
    };

    Vector theta;
    if (attempt(A, theta)) return theta;
    const double jitter = 1e-10 * H.trace() / static_cast<double>(b);
    if (jitter > 0) {
        A.diagonal().array() += jitter;
        if (attempt(A, theta)) return theta;
    }
    throw Error(ErrorKind::singular_system,
                "H + lambda*I is not positive definite (lambda=" + std::to_string(lambda) +
                    "); use lambda > 0");
}

double lsif_objective(const LsifSystem& system, const Vector& theta) {
    return 0.5 * theta.dot(system.H * theta) - system.h.dot(theta);
}

RatioFit rulsif_fit(const DesignMatrices& design, double lambda, double alpha) {
    const LsifSystem sys = lsif_system(design, alpha);
    RatioFit fit;
    fit.model.centers = design.centers;
    fit.model.sigma = design.sigma;
    fit.model.alpha = alpha;
    fit.model.theta = solve_regularized(sys.H, sys.h, lambda);
    fit.diagnostics.objective_value =
        lsif_objective(sys, fit.model.theta) + 0.5 * lambda * fit.model.theta.squaredNorm();
    return fit;
}

RatioFit ulsif_fit(const DesignMatrices& design, double lambda) {
    return rulsif_fit(design, lambda, 0.0);
}

double kliep_objective(const Matrix& k_num, const Vector& theta) {
    const Vector g = k_num * theta;
    double acc = 0.0;
    for (Index i = 0; i < g.size(); ++i) acc += std::log(std::max(kLogFloor, g[i]));
    return acc / static_cast<double>(g.size());
}

Vector kliep_gradient(const Matrix& k_num, const Vector& theta) {
    const Vector g = k_num * theta;
    Vector w(g.size());
    for (Index i = 0; i < g.size(); ++i) w[i] = g[i] > kLogFloor ? 1.0 / g[i] : 0.0;
    return k_num.transpose() * w / static_cast<double>(g.size());
}

RatioFit kliep_fit(const DesignMatrices& design, const KliepOptions& options) {
    const Index b = design.centers.rows();
    if (design.k_num.cols() != b || design.k_den.cols() != b || design.k_num.rows() < 1 ||
        design.k_den.rows() < 1) {
        throw Error(ErrorKind::dimension, "design matrices do not match the number of centers");
    }
    const Matrix& K = design.k_num;
    // Normalization constraint: norm_weights . theta == 1.
    const Vector norm_weights = design.k_den.colwise().mean().transpose();

    // Euclidean projection onto {theta >= 0, w.theta = 1}: theta = max(0, v - mu w)
    // with mu found by bisection, then an exact rescale to absorb rounding.
    auto project = [&](const Vector& v, Vector& out) {
        auto mass_at = [&](double mu) { return norm_weights.dot((v - mu * norm_weights).cwiseMax(0.0)); };
        double lo = 0.0, hi = 0.0;
        double span = 1.0;
        if (mass_at(0.0) > 1.0) {
            while (mass_at(hi = span) > 1.0) span *= 2.0;
        } else {
            while (mass_at(lo = -span) < 1.0) span *= 2.0;
        }
        for (int i = 0; i < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++i) {
            const double mid = 0.5 * (lo + hi);
            (mass_at(mid) > 1.0 ? lo : hi) = mid;
        }
        out = (v - 0.5 * (lo + hi) * norm_weights).cwiseMax(0.0);
        const double mass = norm_weights.dot(out);
        if (!(mass > 0) || !std::isfinite(mass)) return false;
        out /= mass;
        return true;
    };

    Vector theta = Vector::Constant(b, 1.0 / norm_weights.sum());
    double objective = kliep_objective(K, theta);
    if (!std::isfinite(objective)) {
        throw Error(ErrorKind::numeric, "KLIEP objective is not finite at the initial point");
    }

    RatioFit fit;
    fit.diagnostics.converged = false;
    fit.diagnostics.objective_trace.push_back(objective);

    constexpr double kArmijo = 1e-4;
    constexpr double kMinStep = 1e-20;
    int iter = 0;
    while (iter < options.max_iters) {
        ++iter;
        const Vector grad = kliep_gradient(K, theta);
        Vector candidate;
        double cand_obj = objective;
        bool accepted = false;
        for (double step = 1.0; step >= kMinStep; step *= 0.5) {
            if (!project(theta + step * grad, candidate)) continue;
            cand_obj = kliep_objective(K, candidate);
            const double predicted = grad.dot(candidate - theta);
            if (std::isfinite(cand_obj) && cand_obj >= objective &&
                cand_obj - objective >= kArmijo * predicted) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            // No ascent direction left along the projected path.
            fit.diagnostics.converged = true;
            break;
        }
        const double change = cand_obj - objective;
        theta = std::move(candidate);
        objective = cand_obj;
        fit.diagnostics.objective_trace.push_back(objective);
        if (change < options.tolerance) {
            fit.diagnostics.converged = true;
            break;
        }
    }
    if (!std::isfinite(objective)) {
        throw Error(ErrorKind::numeric, "KLIEP objective became non-finite");
    }

    fit.model.centers = design.centers;
    fit.model.sigma = design.sigma;
    fit.model.alpha = 0.0;
    fit.model.theta = std::move(theta);
    fit.diagnostics.iterations = iter;
    fit.diagnostics.objective_value = objective;
    return fit;
}

double pe_alpha_from_values(const Vector& g_num, const Vector& g_den, double alpha) {
    if (g_num.size() < 1 || g_den.size() < 1) {
        throw Error(ErrorKind::dimension, "PE estimate needs non-empty sample sets");
    }
    return -0.5 * alpha * g_num.squaredNorm() / static_cast<double>(g_num.size()) -
           0.5 * (1.0 - alpha) * g_den.squaredNorm() / static_cast<double>(g_den.size()) +
           g_num.mean() - 0.5;
}

double pe_alpha_estimate(const RatioModel& model, const Samples& numerator,
                         const Samples& denominator) {
    if (numerator.rows() != denominator.rows() || numerator.rows() != model.centers.rows()) {
        throw Error(ErrorKind::dimension,
                    "PE estimate: sample counts (" + std::to_string(numerator.rows()) + ", " +
                        std::to_string(denominator.rows()) + ") do not match the fit (" +
                        std::to_string(model.centers.rows()) + ")");
    }
    return pe_alpha_from_values(model.evaluate(numerator), model.evaluate(denominator),
                                model.alpha);
}

double kl_from_values(const Vector& g_num) {
    if (g_num.size() < 1) throw Error(ErrorKind::dimension, "KL estimate needs samples");
    double acc = 0.0;
    for (Index i = 0; i < g_num.size(); ++i) acc += std::log(std::max(kLogFloor, g_num[i]));
    const double kl = acc / static_cast<double>(g_num.size());
    if (!std::isfinite(kl)) throw Error(ErrorKind::numeric, "KL estimate is not finite");
    return kl;
}

double kl_estimate(const RatioModel& model, const Samples& numerator) {
    return kl_from_values(model.evaluate(numerator));
}

}  // namespace relcpd
