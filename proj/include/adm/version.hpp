#pragma once

namespace adm {

inline constexpr const char* kVersion = "0.1.0";

} // namespace adm
