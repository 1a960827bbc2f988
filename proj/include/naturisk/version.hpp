#pragma once

namespace naturisk {

inline constexpr const char* kVersion = "0.1.0";

} // namespace naturisk
