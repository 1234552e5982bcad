#pragma once

namespace ilock {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ilock
