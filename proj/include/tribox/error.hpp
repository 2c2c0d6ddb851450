// Copyright 2026 The tribox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRIBOX_ERROR_HPP
#define TRIBOX_ERROR_HPP

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tribox {

enum class ErrorKind {
    NegativeProbability,
    NotNormalized,
    SignalingDetected,
    BadWeights,
    BadParameters,
    UnknownVariant,
    ConstructionFailure,
    LPNumericalFailure,
    NotInR,
    ResidualInvalid,
    InvalidState,
    InvalidSettings,
    ParseError,
};

constexpr std::string_view to_string(ErrorKind k) noexcept {
    switch (k) {
        case ErrorKind::NegativeProbability: return "NegativeProbability";
        case ErrorKind::NotNormalized: return "NotNormalized";
        case ErrorKind::SignalingDetected: return "SignalingDetected";
        case ErrorKind::BadWeights: return "BadWeights";
        case ErrorKind::BadParameters: return "BadParameters";
        case ErrorKind::UnknownVariant: return "UnknownVariant";
        case ErrorKind::ConstructionFailure: return "ConstructionFailure";
        case ErrorKind::LPNumericalFailure: return "LPNumericalFailure";
        case ErrorKind::NotInR: return "NotInR";
        case ErrorKind::ResidualInvalid: return "ResidualInvalid";
        case ErrorKind::InvalidState: return "InvalidState";
        case ErrorKind::InvalidSettings: return "InvalidSettings";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

/// Every failure raised by the library. The message names the offending
/// index set or parameter; kind() is stable for programmatic dispatch.
class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

   private:
    ErrorKind kind_;
};

namespace detail {

// printf-style formatting for messages; GCC 11 has no <format>.
template <class... Args>
std::string strfmt(const char *fmt, Args... args) {
    int n = std::snprintf(nullptr, 0, fmt, args...);
    std::string out(static_cast<size_t>(n), '\0');
    std::snprintf(out.data(), out.size() + 1, fmt, args...);
    return out;
}

}  // namespace detail

}  // namespace tribox

#endif
