#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fig2.hpp"
#include "relcpd/detector.hpp"
#include "relcpd/error.hpp"
#include "relcpd/rng.hpp"
#include "relcpd/synthgen.hpp"

using namespace relcpd;

namespace {

TimeSeries noise_series(Index T, std::uint64_t seed) {
    Rng rng(seed);
    TimeSeries s;
    s.values.resize(1, T);
    for (Index t = 0; t < T; ++t) s.values(0, t) = rng.normal();
    return s;
}

DetectorConfig small_config() {
    DetectorConfig c;
    c.n = 10;
    c.k = 3;
    c.grid.folds = 5;
    return c;
}

}  // namespace

TEST_CASE("minimum_length") {
    DetectorConfig c;
    CHECK(minimum_length(c) == 109);
    c.n = 2;
    c.k = 1;
    CHECK(minimum_length(c) == 4);
    c.n = 25;
    c.k = 5;
    CHECK(minimum_length(c) == 54);
}

TEST_CASE("change_scores layout") {
    const auto s = noise_series(60, 1);
    auto c = small_config();
    const auto out = change_scores(s, c);
    // t runs 1 .. T - 2n - k + 2 = 60 - 20 - 3 + 2 = 39.
    REQUIRE(out.scores.size() == 39);
    CHECK(out.boundaries.front() == 11);
    CHECK(out.boundaries.back() == 49);
    for (double v : out.scores) CHECK(v >= 0.0);

    c.stride = 4;
    const auto strided = change_scores(s, c);
    REQUIRE(strided.scores.size() == 10);
    for (std::size_t i = 1; i < strided.boundaries.size(); ++i) {
        CHECK(strided.boundaries[i] - strided.boundaries[i - 1] == 4);
    }
}

TEST_CASE("change_scores errors") {
    auto c = small_config();
    SUBCASE("too short") {
        try {
            change_scores(noise_series(minimum_length(c) - 1, 2), c);
            FAIL("expected insufficient data");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::insufficient_data);
            CHECK(std::string(e.what()).find(std::to_string(minimum_length(c))) != std::string::npos);
        }
        CHECK(change_scores(noise_series(minimum_length(c), 2), c).scores.size() == 1);
    }
    SUBCASE("constant series has no bandwidth") {
        TimeSeries flat;
        flat.values = Matrix::Zero(1, 40);
        try {
            change_scores(flat, c);
            FAIL("expected degenerate bandwidth");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::degenerate_bandwidth);
            CHECK(std::string(e.what()).find("t=1") != std::string::npos);
        }
    }
    SUBCASE("bad config") {
        c.alpha = 1.0;
        CHECK_THROWS_AS(change_scores(noise_series(60, 2), c), Error);
    }
}

TEST_CASE("symmetric score is the sum of forward and backward") {
    const auto s = generate({2, 400, 100, 5});
    for (auto est : {EstimatorKind::rulsif, EstimatorKind::ulsif, EstimatorKind::kliep}) {
        auto c = small_config();
        c.estimator = est;
        c.clip_negative = false;
        c.stride = 7;
        c.grid.sigma_factors = {1.0};
        c.grid.lambdas = {0.1};
        c.score_mode = ScoreMode::symmetric;
        const auto sym = change_scores(s, c);
        c.score_mode = ScoreMode::forward;
        const auto fwd = change_scores(s, c);
        c.score_mode = ScoreMode::backward;
        const auto bwd = change_scores(s, c);
        REQUIRE(sym.scores.size() == fwd.scores.size());
        for (std::size_t i = 0; i < sym.scores.size(); ++i) {
            CHECK(sym.scores[i] == doctest::Approx(fwd.scores[i] + bwd.scores[i]).epsilon(1e-12));
        }
    }
}

TEST_CASE("rulsif with alpha 0 equals ulsif") {
    const auto s = generate({1, 300, 100, 3});
    auto c = small_config();
    c.stride = 5;
    c.alpha = 0.0;
    c.estimator = EstimatorKind::rulsif;
    const auto a = change_scores(s, c);
    c.estimator = EstimatorKind::ulsif;
    c.alpha = 0.1;  // ignored by uLSIF
    const auto b = change_scores(s, c);
    for (std::size_t i = 0; i < a.scores.size(); ++i) CHECK(std::abs(a.scores[i] - b.scores[i]) <= 1e-10);
}

TEST_CASE("determinism, serial/parallel agreement and cv_stride") {
    const auto s = generate({3, 300, 100, 8});
    auto c = small_config();
    c.stride = 3;
    c.cv_stride = 4;
    c.grid.seed = 99;
    const auto a = change_scores(s, c, Execution::serial);
    const auto b = change_scores(s, c, Execution::serial);
    const auto p = change_scores(s, c, Execution::parallel);
    CHECK(a.scores == b.scores);
    CHECK(a.scores == p.scores);
    CHECK(a.boundaries == p.boundaries);

    // With a singleton grid CV has nothing to choose, so cv_stride is irrelevant.
    c.grid.sigma_factors = {1.0};
    c.grid.lambdas = {0.1};
    c.cv_stride = 1;
    const auto every = change_scores(s, c);
    c.cv_stride = 5;
    const auto sparse = change_scores(s, c);
    CHECK(every.scores.size() == sparse.scores.size());
    for (std::size_t i = 0; i < every.scores.size(); ++i) {
        CHECK(every.scores[i] != doctest::Approx(-1.0));
    }
}

TEST_CASE("time-shift equivariance") {
    const auto base = noise_series(200, 12);
    const Index m = 6;
    auto c = small_config();
    c.stride = 3;
    c.grid.sigma_factors = {1.0};
    c.grid.lambdas = {0.1};
    // The shorter series is the longer one with its first m steps removed.
    TimeSeries shifted;
    shifted.values = base.values.rightCols(200 - m);
    const auto full = change_scores(base, c);
    const auto tail = change_scores(shifted, c);
    const std::size_t offset = static_cast<std::size_t>(m / c.stride);
    for (std::size_t i = 0; i < tail.scores.size(); ++i) {
        CHECK(tail.boundaries[i] + m == full.boundaries[i + offset]);
        CHECK(tail.scores[i] == full.scores[i + offset]);
    }
}

TEST_CASE("standardize flag is scale invariant") {
    const auto s = generate({2, 300, 100, 2});
    auto scaled = s;
    scaled.values *= 1000.0;
    auto c = small_config();
    c.stride = 10;
    c.standardize = true;
    const auto a = change_scores(s, c);
    const auto b = change_scores(scaled, c);
    for (std::size_t i = 0; i < a.scores.size(); ++i) CHECK(a.scores[i] == doctest::Approx(b.scores[i]).epsilon(1e-8));
}

TEST_CASE("variance-switch replica") {
    // With k = 10 both directions see large population divergences at both
    // changes, so the check is on window means rather than single peaks.
    auto window_mean = [](const ScoreSeries& s, Index lo, Index hi) {
        double acc = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < s.scores.size(); ++i) {
            if (s.boundaries[i] >= lo && s.boundaries[i] <= hi) {
                acc += s.scores[i];
                ++count;
            }
        }
        return acc / count;
    };
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto series = fig2::variance_switch(seed);
        DetectorConfig c;
        c.grid.seed = seed;
        c.stride = 2;
        const auto sym = change_scores(series, c);
        const double null_level = std::max(window_mean(sym, 90, 130), window_mean(sym, 280, 320));
        CHECK(window_mean(sym, 190, 210) > null_level);
        CHECK(window_mean(sym, 390, 410) > null_level);

        c.score_mode = ScoreMode::forward;
        const auto fwd = change_scores(series, c);
        CHECK(fig2::window_max(fwd, 380, 420) <= fig2::window_max(sym, 380, 420));
    }
}
