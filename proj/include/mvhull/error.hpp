// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mvhull {

/// Error taxonomy shared by the library and the command-line front end.
/// `Invariant` is reserved for violations of proven structural facts and
/// therefore always indicates a bug.
enum class ErrorCode {
    Parse,
    Domain,
    NotInHull,
    NotHom,
    Invariant,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Parse: return "PARSE";
        case ErrorCode::Domain: return "DOMAIN";
        case ErrorCode::NotInHull: return "NOT_IN_HULL";
        case ErrorCode::NotHom: return "NOT_HOM";
        case ErrorCode::Invariant: return "INVARIANT";
    }
    return "UNKNOWN";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace mvhull
