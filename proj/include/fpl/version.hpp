#pragma once

namespace fpl {

inline constexpr const char* kToolName = "fpl";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace fpl
