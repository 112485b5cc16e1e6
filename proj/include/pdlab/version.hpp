#pragma once

namespace pdlab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace pdlab
