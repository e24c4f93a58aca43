#pragma once

namespace edgekernel {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace edgekernel
