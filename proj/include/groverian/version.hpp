#pragma once

namespace groverian {

inline constexpr const char* kVersion = "0.1.0";

} // namespace groverian
