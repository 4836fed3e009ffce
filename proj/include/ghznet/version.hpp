#pragma once

namespace ghznet {

inline constexpr const char* kVersion = "0.1.0";

} // namespace ghznet
