#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "relcpd/error.hpp"
#include "relcpd/kernel.hpp"
#include "relcpd/rng.hpp"

using namespace relcpd;

namespace {

Samples column(std::initializer_list<double> values) {
    Samples s(static_cast<Index>(values.size()), 1);
    Index i = 0;
    for (double v : values) s(i++, 0) = v;
    return s;
}

Samples random_samples(Rng& rng, Index rows, Index cols, double scale = 1.0) {
    Samples s(rows, cols);
    for (Index r = 0; r < rows; ++r) for (Index c = 0; c < cols; ++c) s(r, c) = scale * rng.normal();
    return s;
}

// Sort-everything oracle for the median pairwise distance.
double median_oracle(const Samples& s) {
    std::vector<double> d;
    for (Index a = 0; a < s.rows(); ++a) {
        for (Index b = a + 1; b < s.rows(); ++b) d.push_back((s.row(a) - s.row(b)).norm());
    }
    std::sort(d.begin(), d.end());
    const std::size_t m = d.size();
    return m % 2 == 1 ? d[m / 2] : 0.5 * (d[m / 2 - 1] + d[m / 2]);
}

}  // namespace

TEST_CASE("gaussian_kernel values") {
    Eigen::RowVectorXd a(2), b(2);
    a << 0.3, -1.2;
    CHECK(gaussian_kernel(a, a, 0.7) == 1.0);

    // |a - b| = sigma gives exp(-1/2).
    b << 0.3 + 0.6, -1.2 + 0.8;  // distance 1.0
    CHECK(gaussian_kernel(a, b, 1.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
    CHECK(gaussian_kernel(a, b, 1.0) == doctest::Approx(0.60653).epsilon(1e-5));

    b << 1e6, 1e6;
    const double far = gaussian_kernel(a, b, 1.0);
    CHECK(far >= 0.0);
    CHECK(far < 1e-300);

    Eigen::RowVectorXd c(3);
    CHECK_THROWS_AS(gaussian_kernel(a, c, 1.0), Error);
    CHECK_THROWS_AS(gaussian_kernel(a, a, 0.0), Error);
}

TEST_CASE("gaussian_kernel is exactly symmetric") {
    Rng rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto s = random_samples(rng, 2, 7);
        const double sigma = 0.1 + rng.uniform() * 3.0;
        CHECK(gaussian_kernel(s.row(0), s.row(1), sigma) == gaussian_kernel(s.row(1), s.row(0), sigma));
    }
}

TEST_CASE("median_distance") {
    CHECK(median_distance(column({0, 1})) == 1.0);
    CHECK(median_distance(column({0, 1, 3})) == 2.0);
    // Pairs {1,1,2,2,3,4}: median of the two middle order statistics is 2.
    CHECK(median_distance(column({0, 1, 2, 4})) == 2.0);
    CHECK(median_oracle(column({0, 1, 2, 4})) == 2.0);

    try {
        median_distance(column({2, 2, 2}));
        FAIL("expected degenerate bandwidth");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degenerate_bandwidth);
    }
}

TEST_CASE("median_distance matches oracle, is permutation invariant and scale equivariant") {
    Rng rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const Index m = 2 + static_cast<Index>(rng.below(60));
        const auto s = random_samples(rng, m, 1 + static_cast<Index>(rng.below(4)));
        const double med = median_distance(s);
        CHECK(med == doctest::Approx(median_oracle(s)).epsilon(1e-14));

        Samples shuffled = s;
        std::vector<Index> order(static_cast<std::size_t>(m));
        for (Index i = 0; i < m; ++i) order[static_cast<std::size_t>(i)] = i;
        rng.shuffle(std::span<Index>(order));
        for (Index i = 0; i < m; ++i) shuffled.row(i) = s.row(order[static_cast<std::size_t>(i)]);
        CHECK(median_distance(shuffled) == doctest::Approx(med).epsilon(1e-14));

        const double c = 0.25 + 4.0 * rng.uniform();
        CHECK(median_distance(Samples(c * s)) == doctest::Approx(c * med).epsilon(1e-12));
    }
}

TEST_CASE("design_matrices") {
    Rng rng(9);
    const auto num = random_samples(rng, 12, 3);
    const auto den = random_samples(rng, 12, 3, 1.5);
    const double sigma = 0.9;
    const auto dm = design_matrices(num, den, num, sigma);

    SUBCASE("self kernel diagonal is one") {
        for (Index i = 0; i < 12; ++i) CHECK(dm.k_num(i, i) == 1.0);
    }
    SUBCASE("entries in (0, 1] and match elementwise recomputation") {
        for (Index i = 0; i < 12; ++i) {
            for (Index l = 0; l < 12; ++l) {
                const double kn = gaussian_kernel(num.row(i), num.row(l), sigma);
                const double kd = gaussian_kernel(den.row(i), num.row(l), sigma);
                CHECK(dm.k_num(i, l) > 0.0);
                CHECK(dm.k_num(i, l) <= 1.0);
                CHECK(dm.k_den(i, l) > 0.0);
                CHECK(dm.k_den(i, l) <= 1.0);
                CHECK(std::abs(dm.k_num(i, l) - kn) <= 1e-12 * kn);
                CHECK(std::abs(dm.k_den(i, l) - kd) <= 1e-12 * kd);
            }
        }
    }
    SUBCASE("single sample at distance sigma") {
        Samples y(1, 2), y2(1, 2);
        y << 1.0, 2.0;
        y2 << 1.0 + 0.3, 2.0 + 0.4;  // distance 0.5
        const auto single = design_matrices(y, y2, y, 0.5);
        CHECK(single.k_den(0, 0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-14));
        CHECK(single.k_num(0, 0) == 1.0);
    }
    SUBCASE("dimension mismatch") {
        const auto wide = random_samples(rng, 12, 4);
        CHECK_THROWS_AS(design_matrices(num, wide, num, sigma), Error);
    }
}
