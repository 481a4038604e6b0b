#pragma once

namespace vrteh {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace vrteh
