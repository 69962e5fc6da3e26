#pragma once

namespace j1j2 {

inline constexpr const char* version_string = "0.1.0";

}  // namespace j1j2
