#pragma once

#include <stdexcept>
#include <string>

namespace onebit {

/// Raised when a configuration violates one of the frame, waveform or
/// experiment invariants. The message names the violated invariant.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace onebit
