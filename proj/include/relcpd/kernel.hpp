#pragma once

#include "relcpd/types.hpp"

namespace relcpd {

struct KernelConfig {
    double sigma = 1.0;

    /// Throws parameter error unless sigma is positive and finite.
    void validate() const;
};

/// Gaussian kernel exp(-|a - b|^2 / (2 sigma^2)).
double gaussian_kernel(const Eigen::Ref<const Eigen::RowVectorXd>& a,
                       const Eigen::Ref<const Eigen::RowVectorXd>& b, double sigma);

/// Pairwise squared Euclidean distances, rows of `a` against rows of `b`.
Matrix squared_distances(const Samples& a, const Samples& b,
                         Execution exec = Execution::parallel);

/// Elementwise Gaussian transform of a squared-distance matrix.
Matrix gaussian_from_squared(const Matrix& squared, double sigma);

/// Median of all pairwise distances |s_a - s_b|, a < b. Even pair counts
/// average the two middle order statistics.
double median_distance(const Samples& samples, Execution exec = Execution::parallel);

/// Kernel values of both sample sets against the basis centers.
///   k_num(i, l) = K(Y_i, C_l),  k_den(j, l) = K(Y'_j, C_l)
struct DesignMatrices {
    Matrix k_num;
    Matrix k_den;
    Samples centers;
    double sigma = 1.0;
};

DesignMatrices design_matrices(const Samples& numerator, const Samples& denominator,
                               const Samples& centers, double sigma,
                               Execution exec = Execution::parallel);

/// Squared distances of numerator and denominator samples to the centers,
/// computed once and turned into design matrices for any sigma. Used by the
/// cross-validation grid, which sweeps sigma over fixed samples.
class DistanceCache {
public:
    DistanceCache(const Samples& numerator, const Samples& denominator, const Samples& centers,
                  Execution exec = Execution::parallel);

    DesignMatrices design(double sigma) const;

    const Matrix& numerator_sq() const noexcept { return sq_num_; }
    const Matrix& denominator_sq() const noexcept { return sq_den_; }
    const Samples& centers() const noexcept { return centers_; }

private:
    Matrix sq_num_;
    Matrix sq_den_;
    Samples centers_;
};

}  // namespace relcpd
