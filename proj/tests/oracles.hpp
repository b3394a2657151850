// Test-only reference computations, independent of the library code paths.
#pragma once

#include <cmath>
#include <functional>
#include <numbers>

namespace oracle {

inline double normal_pdf(double x, double mean, double sd) {
    const double z = (x - mean) / sd;
    return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

/// Composite Simpson rule on [a, b] with an even number of intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
    const double h = (b - a) / intervals;
    double acc = f(a) + f(b);
    for (int i = 1; i < intervals; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    return acc * h / 3.0;
}

/// alpha-relative Pearson divergence PE(P || alpha P + (1 - alpha) P')
/// = 1/2 * integral of p'_a (p / p'_a - 1)^2, by quadrature over [-10, 10].
inline double relative_pe(const std::function<double(double)>& p,
                          const std::function<double(double)>& p_prime, double alpha) {
    return simpson(
        [&](double y) {
            const double mix = alpha * p(y) + (1.0 - alpha) * p_prime(y);
            if (mix <= 0.0) return 0.0;
            const double r = p(y) / mix;
            return 0.5 * mix * (r - 1.0) * (r - 1.0);
        },
        -10.0, 10.0, 20000);
}

/// KL(N(m1, s^2) || N(m2, s^2)) for equal variances.
inline double kl_equal_variance(double m1, double m2, double sd) {
    return (m1 - m2) * (m1 - m2) / (2.0 * sd * sd);
}

}  // namespace oracle
