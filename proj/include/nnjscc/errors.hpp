#pragma once

#include <stdexcept>
#include <string>

namespace nnjscc {

// Invalid or inconsistent experiment configuration. CLI exit code 1.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed to converge or lost its precision target. CLI exit code 2.
struct numerical_error : std::runtime_error {
    explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A run would exceed a configured resource budget. Raised before any allocation. CLI exit code 2.
struct resource_error : std::runtime_error {
    explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace nnjscc
