#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace relcpd {

enum class ErrorKind {
    invalid_window_length,
    invalid_data,
    segment_range,
    dimension,
    degenerate_bandwidth,
    singular_system,
    parameter,
    numeric,
    insufficient_data,
    parse,
    empty_input,
    io,
    undefined_tpr,
};

/// Machine-parsable category name, e.g. "degenerate-bandwidth".
std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace relcpd
