#pragma once

#include <stdexcept>
#include <string>

namespace fkmix {

// Invalid caller input (bad parameters, size mismatches, domain violations).
struct InvalidInput : std::invalid_argument {
    explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

// An exact-enumeration cap was exceeded.
struct TooLarge : std::runtime_error {
    explicit TooLarge(const std::string& msg) : std::runtime_error(msg) {}
};

// A rejection-sampling loop ran out of attempts.
struct RetryExhausted : std::runtime_error {
    explicit RetryExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace fkmix
