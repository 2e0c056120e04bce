#pragma once

namespace boolperc {

inline constexpr const char* kVersion = "0.1.0";

} // namespace boolperc
