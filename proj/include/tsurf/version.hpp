#pragma once

namespace tsurf {
inline constexpr const char* kVersion = "0.1.0";
}
