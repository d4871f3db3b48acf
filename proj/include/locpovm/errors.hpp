#pragma once

#include <stdexcept>
#include <string>

namespace locpovm {

// Bad user input: malformed config, out-of-range parameter, unknown key.
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Valid input that cannot be computed: degenerate packet, non-spacelike
// foliation, hermiticity violation.  The CLI maps this to exit code 3.
struct ComputeError : std::runtime_error {
    explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace locpovm
