#pragma once

namespace betatest {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace betatest
