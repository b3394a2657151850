#include "relcpd/synthgen.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "relcpd/error.hpp"
#include "relcpd/rng.hpp"

namespace relcpd {

namespace {

constexpr double kArLag1 = 0.6;
constexpr double kArLag2 = -0.5;

Index block_of(Index t, Index segment_len) { return (t - 1) / segment_len + 1; }

TimeSeries blank_series(const SynthSpec& spec, Index dim) {
    spec.validate();
    TimeSeries s;
    s.values = Matrix::Zero(dim, spec.length);
    for (Index b = 2; b <= spec.blocks(); ++b) s.change_points.push_back((b - 1) * spec.segment_len + 1);
    s.name = "dataset" + std::to_string(spec.dataset_id);
    return s;
}

template <typename NoiseFn>
TimeSeries autoregressive(const SynthSpec& spec, NoiseFn noise) {
    TimeSeries s = blank_series(spec, 1);
    Rng rng(spec.seed);
    auto y = s.values.row(0);
    for (Index t = 3; t <= spec.length; ++t) {
        const Index col = t - 1;
        y[col] = kArLag1 * y[col - 1] + kArLag2 * y[col - 2] +
                 noise(rng, block_of(t, spec.segment_len));
    }
    return s;
}

}  // namespace

void SynthSpec::validate() const {
    if (dataset_id < 1 || dataset_id > 4) {
        throw Error(ErrorKind::parameter, "dataset must be 1, 2, 3 or 4");
    }
    if (segment_len < 1 || length < 1 || length % segment_len != 0) {
        throw Error(ErrorKind::parameter, "length must be a positive multiple of segment_len");
    }
    if (dataset_id == 1 || dataset_id == 2) {
        if (length < 2) throw Error(ErrorKind::parameter, "AR datasets need length >= 2");
    }
    if (dataset_id == 3 && std::abs(switching_correlation(blocks())) >= 1.0) {
        throw Error(ErrorKind::parameter, "dataset 3 correlation leaves (-1, 1) for " +
                                              std::to_string(blocks()) + " blocks");
    }
}

double jumping_mean(Index block) {
    double mu = 0.0;
    for (Index n = 2; n <= block; ++n) mu += static_cast<double>(n) / 16.0;
    return mu;
}

double scaling_stddev(Index block) {
    if (block % 2 == 1) return 1.0;
    return std::log(std::numbers::e + static_cast<double>(block) / 4.0);
}

double switching_correlation(Index block) {
    const double magnitude = 0.8 + static_cast<double>(block - 2) / 500.0;
    return block % 2 == 1 ? -magnitude : magnitude;
}

double changing_frequency(Index block) {
    double omega = 1.0;
    for (Index n = 2; n <= block; ++n) omega *= std::log(std::numbers::e + static_cast<double>(n) / 2.0);
    return omega;
}

TimeSeries gen_dataset1(const SynthSpec& spec) {
    if (spec.dataset_id != 1) throw Error(ErrorKind::parameter, "gen_dataset1 needs dataset_id 1");
    return autoregressive(spec, [](Rng& rng, Index block) { return rng.normal(jumping_mean(block), 1.5); });
}

TimeSeries gen_dataset2(const SynthSpec& spec) {
    if (spec.dataset_id != 2) throw Error(ErrorKind::parameter, "gen_dataset2 needs dataset_id 2");
    return autoregressive(spec, [](Rng& rng, Index block) { return rng.normal(0.0, scaling_stddev(block)); });
}

TimeSeries gen_dataset3(const SynthSpec& spec) {
    if (spec.dataset_id != 3) throw Error(ErrorKind::parameter, "gen_dataset3 needs dataset_id 3");
    TimeSeries s = blank_series(spec, 2);
    Rng rng(spec.seed);
    for (Index t = 1; t <= spec.length; ++t) {
        const double rho = switching_correlation(block_of(t, spec.segment_len));
        const double z1 = rng.normal();
        const double z2 = rng.normal();
        // Cholesky factor of [[1, rho], [rho, 1]].
        s.values(0, t - 1) = z1;
        s.values(1, t - 1) = rho * z1 + std::sqrt(1.0 - rho * rho) * z2;
    }
    return s;
}

TimeSeries gen_dataset4(const SynthSpec& spec) {
    if (spec.dataset_id != 4) throw Error(ErrorKind::parameter, "gen_dataset4 needs dataset_id 4");
    TimeSeries s = blank_series(spec, 1);
    Rng rng(spec.seed);
    double omega = 1.0;
    Index current = 1;
    for (Index t = 1; t <= spec.length; ++t) {
        const Index block = block_of(t, spec.segment_len);
        while (current < block) {
            ++current;
            omega *= std::log(std::numbers::e + static_cast<double>(current) / 2.0);
        }
        s.values(0, t - 1) = std::sin(omega * static_cast<double>(t)) + rng.normal(0.0, 0.8);
    }
    return s;
}

TimeSeries generate(const SynthSpec& spec) {
    switch (spec.dataset_id) {
        case 1: return gen_dataset1(spec);
        case 2: return gen_dataset2(spec);
        case 3: return gen_dataset3(spec);
        case 4: return gen_dataset4(spec);
        default: break;
    }
    spec.validate();
    return {};
}

}  // namespace relcpd
