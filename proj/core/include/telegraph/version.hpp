#pragma once

namespace telegraph {

inline constexpr const char* kToolVersion = "1.0.0";

} // namespace telegraph
