#pragma once

namespace crowdsel {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace crowdsel
