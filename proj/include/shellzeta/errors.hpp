#pragma once

#include <stdexcept>
#include <string>

namespace shellzeta {

// Bad arguments, malformed region files, precondition violations.
// CLI maps these to exit code 2.
struct input_error : std::runtime_error {
    explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Builder parameter outside its admissible range; the message names the
// violated bound.
struct constraint_error : input_error {
    explicit constraint_error(const std::string& msg) : input_error(msg) {}
};

// Operation not applicable to this region (e.g. classical content of an
// infinite-measure set, spherical volume of a sup-norm region).
struct unsupported_error : input_error {
    explicit unsupported_error(const std::string& msg) : input_error(msg) {}
};

// The requested integral genuinely diverges (evaluation at or below the
// upper shell dimension).  CLI maps these to exit code 3.
struct divergence_error : std::runtime_error {
    explicit divergence_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Quadrature or extrapolation failed to reach the requested accuracy.
// CLI maps these to exit code 3.
struct precision_error : std::runtime_error {
    explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace shellzeta
