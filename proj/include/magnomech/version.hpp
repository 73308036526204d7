#pragma once

#define MAGNOMECH_VERSION "1.0.0"

namespace magnomech {
inline constexpr const char* version = MAGNOMECH_VERSION;
}  // namespace magnomech
