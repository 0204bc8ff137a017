#pragma once

namespace usnc {
inline constexpr const char* kToolName = "usnc";
inline constexpr const char* kToolVersion = "0.1.0";
}  // namespace usnc
