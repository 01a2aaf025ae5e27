#pragma once

namespace levyz {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace levyz
