#pragma once

namespace qdrive {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qdrive
