#pragma once

namespace ptdx {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ptdx
