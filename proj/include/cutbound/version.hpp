#pragma once

namespace cutbound {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace cutbound
