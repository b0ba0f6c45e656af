#pragma once

namespace rwidth {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rwidth
