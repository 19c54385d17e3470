#pragma once

namespace kreg {

inline constexpr const char* tool_name = "kreg";
inline constexpr const char* tool_version = "1.0.0";

}  // namespace kreg
