#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace photonstat {

// Runtime error with a stable machine-readable code. The CLI maps these to
// error JSON and exit code 2; library users can dispatch on code().
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void raise(std::string code, const std::string& message) {
    throw Error(std::move(code), message);
}

namespace errc {
// Codes used across modules. Kept as plain strings so new ones do not
// require touching a central enum.
inline constexpr const char* malformed_record = "MalformedRecord";
inline constexpr const char* unsorted_stream = "UnsortedStream";
inline constexpr const char* unknown_channel = "UnknownChannel";
inline constexpr const char* io_failure = "IoFailure";
inline constexpr const char* invalid_config = "InvalidConfig";
inline constexpr const char* unsorted_input = "UnsortedInput";
inline constexpr const char* empty_window = "EmptyWindow";
inline constexpr const char* division_by_zero_config = "DivisionByZeroConfig";
inline constexpr const char* non_convergence = "NonConvergence";
inline constexpr const char* degenerate_data = "DegenerateData";
inline constexpr const char* singular_jacobian = "SingularJacobian";
inline constexpr const char* non_positive_pressure = "NonPositivePressure";
inline constexpr const char* invalid_coefficients = "InvalidCoefficients";
}  // namespace errc

}  // namespace photonstat
