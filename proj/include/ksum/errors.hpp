#pragma once

#include <stdexcept>
#include <string>

namespace ksum {

// Thrown when an enumeration or evaluation would exceed a configured cap.
// Callers are expected to fall back to sampling instead of truncating.
struct cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}
