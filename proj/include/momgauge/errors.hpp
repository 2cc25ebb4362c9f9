#pragma once

#include <stdexcept>
#include <string>

namespace momgauge {

/// Invalid construction parameters (bad grid sizes, non-positive extents, ...).
struct config_error : std::runtime_error {
    explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A field configuration was evaluated on its singular set.
struct singular_error : std::runtime_error {
    explicit singular_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A matrix claimed Hermitian failed the hermiticity check.
struct hermiticity_error : std::runtime_error {
    explicit hermiticity_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace momgauge
