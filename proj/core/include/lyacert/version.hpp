#pragma once

namespace lyacert {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lyacert
