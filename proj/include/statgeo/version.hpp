#pragma once

namespace statgeo {

inline constexpr const char* kToolName = "statgeo";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace statgeo
