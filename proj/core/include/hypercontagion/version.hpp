#pragma once

namespace hc {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hc
