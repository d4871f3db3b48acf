#pragma once

namespace locpovm {
inline constexpr const char* kVersion = "0.1.0";
}
