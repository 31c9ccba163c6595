#pragma once

namespace mdiew {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mdiew
