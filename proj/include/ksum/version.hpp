#pragma once

namespace ksum {

inline constexpr const char* kVersion = "0.1.0";

}
