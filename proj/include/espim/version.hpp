#pragma once

namespace espim {

inline constexpr const char* kToolName = "espim";
inline constexpr const char* kToolVersion = "1.0.0";

} // namespace espim
