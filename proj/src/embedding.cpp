#include "relcpd/embedding.hpp"

#include <cmath>
#include <string>

#include "relcpd/error.hpp"

namespace relcpd {

void TimeSeries::validate() const {
    if (dim() < 1 || length() < 1) {
        throw Error(ErrorKind::invalid_data, "time series must have d >= 1 and T >= 1");
    }
    if (!values.allFinite()) {
        throw Error(ErrorKind::invalid_data, "time series contains non-finite values");
    }
    Index previous = 0;
    for (const Index cp : change_points) {
        if (cp <= previous || cp > length()) {
            throw Error(ErrorKind::invalid_data,
                        "change point " + std::to_string(cp) +
                            " is not strictly increasing within [1, T]");
        }
        previous = cp;
    }
}

WindowSet build_windows(const TimeSeries& series, Index k) {
    series.validate();
    const Index d = series.dim();
    const Index T = series.length();
    if (k < 1 || k > T) {
        throw Error(ErrorKind::invalid_window_length,
                    "window length k=" + std::to_string(k) + " must lie in [1, " +
                        std::to_string(T) + "]");
    }
    WindowSet out;
    out.k = k;
    out.d = d;
    out.start_index = 1;
    out.vectors.resize(T - k + 1, d * k);
    for (Index w = 0; w < out.vectors.rows(); ++w) {
        for (Index lag = 0; lag < k; ++lag) {
            out.vectors.row(w).segment(lag * d, d) = series.values.col(w + lag).transpose();
        }
    }
    return out;
}

SegmentPair segment_pair(const WindowSet& windows, Index t, Index n) {
    if (n < 1 || t < windows.first_time() || t + 2 * n - 1 > windows.last_time()) {
        throw Error(ErrorKind::segment_range,
                    "segment pair t=" + std::to_string(t) + ", n=" + std::to_string(n) +
                        " needs windows " + std::to_string(t) + ".." +
                        std::to_string(t + 2 * n - 1) + " but only " +
                        std::to_string(windows.first_time()) + ".." +
                        std::to_string(windows.last_time()) + " exist");
    }
    const Index row = t - windows.start_index;
    SegmentPair pair;
    pair.reference = windows.vectors.middleRows(row, n);
    pair.test = windows.vectors.middleRows(row + n, n);
    pair.boundary = t + n;
    return pair;
}

TimeSeries standardized(const TimeSeries& series) {
    series.validate();
    TimeSeries out = series;
    const double T = static_cast<double>(series.length());
    for (Index r = 0; r < series.dim(); ++r) {
        auto row = out.values.row(r);
        const double mean = row.mean();
        row.array() -= mean;
        const double sd = T > 1 ? std::sqrt(row.squaredNorm() / (T - 1)) : 0.0;
        if (sd > 0) row /= sd;
    }
    return out;
}

}  // namespace relcpd
