// Three-segment variance switch: N(0, 2^2), N(0, 1), N(0, 2^2), 200 steps each.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "relcpd/detector.hpp"
#include "relcpd/rng.hpp"

namespace fig2 {

inline relcpd::TimeSeries variance_switch(std::uint64_t seed) {
    relcpd::Rng rng(relcpd::derive_seed(0xF162, seed));
    relcpd::TimeSeries s;
    s.values.resize(1, 600);
    for (relcpd::Index t = 0; t < 600; ++t) {
        const double sd = (t < 200 || t >= 400) ? 2.0 : 1.0;
        s.values(0, t) = rng.normal(0.0, sd);
    }
    s.change_points = {201, 401};
    s.name = "variance_switch";
    return s;
}

inline double window_max(const relcpd::ScoreSeries& s, relcpd::Index lo, relcpd::Index hi) {
    double best = -INFINITY;
    for (std::size_t i = 0; i < s.scores.size(); ++i) {
        if (s.boundaries[i] >= lo && s.boundaries[i] <= hi) best = std::max(best, s.scores[i]);
    }
    return best;
}

/// True if a local maximum with boundary in [lo, hi] exceeds the 90th
/// percentile of all scores outside [lo, hi].
inline bool window_peak_is_prominent(const relcpd::ScoreSeries& s, relcpd::Index lo, relcpd::Index hi) {
    std::vector<double> outside;
    for (std::size_t i = 0; i < s.scores.size(); ++i) {
        if (s.boundaries[i] < lo || s.boundaries[i] > hi) outside.push_back(s.scores[i]);
    }
    if (outside.empty()) return false;
    std::sort(outside.begin(), outside.end());
    // Nearest-rank 90th percentile.
    const auto rank = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(outside.size())));
    const double p90 = outside[std::max<std::size_t>(rank, 1) - 1];
    for (std::size_t i = 1; i + 1 < s.scores.size(); ++i) {
        if (s.boundaries[i] < lo || s.boundaries[i] > hi) continue;
        const bool local_max = s.scores[i] > s.scores[i - 1] && s.scores[i] >= s.scores[i + 1];
        if (local_max && s.scores[i] > p90) return true;
    }
    return false;
}

}  // namespace fig2
