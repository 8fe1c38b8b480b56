#pragma once

namespace sphscat {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace sphscat
