#include "relcpd/error.hpp"

namespace relcpd {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::invalid_window_length: return "invalid-window-length";
        case ErrorKind::invalid_data: return "invalid-data";
        case ErrorKind::segment_range: return "segment-range";
        case ErrorKind::dimension: return "dimension";
        case ErrorKind::degenerate_bandwidth: return "degenerate-bandwidth";
        case ErrorKind::singular_system: return "singular-system";
        case ErrorKind::parameter: return "parameter";
        case ErrorKind::numeric: return "numeric";
        case ErrorKind::insufficient_data: return "insufficient-data";
        case ErrorKind::parse: return "parse";
        case ErrorKind::empty_input: return "empty-input";
        case ErrorKind::io: return "io";
        case ErrorKind::undefined_tpr: return "undefined-tpr";
    }
    return "unknown";
}

}  // namespace relcpd
