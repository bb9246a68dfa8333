#pragma once

namespace qhet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qhet
