#pragma once

#include <cstdint>

#include "relcpd/embedding.hpp"

namespace relcpd {

/// Benchmark series with a change at the first index of every block.
/// Block N (1-based) covers times (N-1)*segment_len + 1 .. N*segment_len.
struct SynthSpec {
    int dataset_id = 1;
    Index length = 5000;
    Index segment_len = 100;
    std::uint64_t seed = 0;

    void validate() const;
    Index blocks() const noexcept { return length / segment_len; }
};

// Block parameter schedules, N >= 1.
double jumping_mean(Index block);        // dataset 1: mu_N
double scaling_stddev(Index block);      // dataset 2: noise std
double switching_correlation(Index block);  // dataset 3: off-diagonal rho_N
double changing_frequency(Index block);  // dataset 4: omega_N

/// AR(2) y(t) = 0.6 y(t-1) - 0.5 y(t-2) + eps_t with y(1) = y(2) = 0.
TimeSeries gen_dataset1(const SynthSpec& spec);  // eps ~ N(mu_N, 1.5^2)
TimeSeries gen_dataset2(const SynthSpec& spec);  // eps ~ N(0, scaling_stddev(N)^2)
TimeSeries gen_dataset3(const SynthSpec& spec);  // 2-D N(0, [[1, rho], [rho, 1]])
TimeSeries gen_dataset4(const SynthSpec& spec);  // sin(omega_N t) + N(0, 0.8^2)

/// Dispatches on spec.dataset_id.
TimeSeries generate(const SynthSpec& spec);

}  // namespace relcpd
