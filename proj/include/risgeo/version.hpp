#pragma once

namespace risgeo {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace risgeo
