#pragma once

#include <string>
#include <vector>

#include "relcpd/types.hpp"

namespace relcpd {

/// d x T real-valued series. Time indices are 1-based everywhere in the
/// public API: column c of `values` holds y(c + 1).
struct TimeSeries {
    Matrix values;
    std::vector<Index> change_points;  // sorted, each in [1, T]
    std::string name;

    Index dim() const noexcept { return values.rows(); }
    Index length() const noexcept { return values.cols(); }

    /// Throws invalid-data if the invariants do not hold.
    void validate() const;
};

/// Subsequence vectors Y(t) = [y(t); y(t+1); ...; y(t+k-1)], one per row.
/// Row i corresponds to time start_index + i.
struct WindowSet {
    Samples vectors;
    Index k = 0;
    Index d = 0;
    Index start_index = 1;

    Index size() const noexcept { return vectors.rows(); }
    Index first_time() const noexcept { return start_index; }
    Index last_time() const noexcept { return start_index + size() - 1; }
};

struct SegmentPair {
    Samples reference;  // windows t .. t+n-1
    Samples test;       // windows t+n .. t+2n-1
    Index boundary = 0; // t + n
};

/// Hankel embedding of a series. Returns T - k + 1 windows.
WindowSet build_windows(const TimeSeries& series, Index k);

/// Consecutive segments starting at time t, each holding n windows.
SegmentPair segment_pair(const WindowSet& windows, Index t, Index n);

/// Per-dimension z-scoring using whole-series statistics. Constant
/// dimensions are centered only.
TimeSeries standardized(const TimeSeries& series);

}  // namespace relcpd
