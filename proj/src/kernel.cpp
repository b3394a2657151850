#include "relcpd/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "relcpd/error.hpp"

namespace relcpd {

namespace {

void require_same_width(Index a, Index b, const char* what) {
    if (a != b) {
        throw Error(ErrorKind::dimension, std::string(what) + ": vector length " +
                                              std::to_string(a) + " does not match " +
                                              std::to_string(b));
    }
}

double row_sq_distance(const Samples& a, Index i, const Samples& b, Index j) {
    double acc = 0.0;
    const double* pa = a.row(i).data();
    const double* pb = b.row(j).data();
    for (Index c = 0; c < a.cols(); ++c) {
        const double diff = pa[c] - pb[c];
        acc += diff * diff;
    }
    return acc;
}

}  // namespace

void KernelConfig::validate() const {
    if (!(sigma > 0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::parameter, "kernel width must be positive and finite");
    }
}

double gaussian_kernel(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                       const Eigen::Ref<const Eigen::RowVectorXd>& b, double sigma) {
    require_same_width(a.size(), b.size(), "gaussian_kernel");
    KernelConfig{sigma}.validate();
    // Accumulate in index order so K(a, b) == K(b, a) bit for bit.
    double sq = 0.0;
    for (Index c = 0; c < a.size(); ++c) {
        const double diff = a[c] - b[c];
        sq += diff * diff;
    }
    return std::exp(-sq / (2.0 * sigma * sigma));
}

Matrix squared_distances(const Samples& a, const Samples& b, Execution exec) {
    require_same_width(a.cols(), b.cols(), "squared_distances");
    Matrix out(a.rows(), b.rows());
    const Index rows = a.rows();
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
        for (Index i = 0; i < rows; ++i) {
            for (Index j = 0; j < b.rows(); ++j) out(i, j) = row_sq_distance(a, i, b, j);
        }
    } else {
        for (Index i = 0; i < rows; ++i) {
            for (Index j = 0; j < b.rows(); ++j) out(i, j) = row_sq_distance(a, i, b, j);
        }
    }
    return out;
}

Matrix gaussian_from_squared(const Matrix& squared, double sigma) {
    KernelConfig{sigma}.validate();
    const double scale = -1.0 / (2.0 * sigma * sigma);
    return (squared.array() * scale).exp().matrix();
}

double median_distance(const Samples& samples, Execution exec) {
    const Index m = samples.rows();
    if (m < 2) {
        throw Error(ErrorKind::degenerate_bandwidth, "median distance needs at least 2 samples");
    }
    const std::size_t pairs = static_cast<std::size_t>(m) * static_cast<std::size_t>(m - 1) / 2;
    std::vector<double> dist(pairs);
    // Pair (a, b), a < b, lives at offset a*m - a*(a+1)/2 + (b - a - 1).
    auto fill_row = [&](Index a) {
        std::size_t offset = static_cast<std::size_t>(a * m - a * (a + 1) / 2);
        for (Index b = a + 1; b < m; ++b) {
            dist[offset++] = std::sqrt(row_sq_distance(samples, a, samples, b));
        }
    };
    if (exec == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (Index a = 0; a < m - 1; ++a) fill_row(a);
    } else {
        for (Index a = 0; a < m - 1; ++a) fill_row(a);
    }

    const std::size_t mid = pairs / 2;
    std::nth_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid), dist.end());
    double median = dist[mid];
    if (pairs % 2 == 0) {
        const double lower = *std::max_element(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(mid));
        median = 0.5 * (lower + median);
    }
    if (!(median > 0)) {
        throw Error(ErrorKind::degenerate_bandwidth,
                    "median pairwise distance is zero; samples are (nearly) identical");
    }
    return median;
}

DesignMatrices design_matrices(const Samples& numerator, const Samples& denominator,
                               const Samples& centers, double sigma, Execution exec) {
    return DistanceCache(numerator, denominator, centers, exec).design(sigma);
}

DistanceCache::DistanceCache(const Samples& numerator, const Samples& denominator,
                             const Samples& centers, Execution exec)
    : sq_num_(squared_distances(numerator, centers, exec)),
      sq_den_(squared_distances(denominator, centers, exec)),
      centers_(centers) {}

DesignMatrices DistanceCache::design(double sigma) const {
    return DesignMatrices{gaussian_from_squared(sq_num_, sigma),
                          gaussian_from_squared(sq_den_, sigma), centers_, sigma};
}

}  // namespace relcpd
