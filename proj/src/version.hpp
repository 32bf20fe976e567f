#pragma once

namespace bilap {
inline constexpr const char* kVersion = "1.0.0";
}
