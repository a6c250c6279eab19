#pragma once

namespace vortexsr {
inline constexpr const char* version = "1.0.0";
}
