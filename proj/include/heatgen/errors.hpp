#pragma once

#include <stdexcept>
#include <string>

namespace heatgen {

// Input/schema problems map to CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Empty or degenerate results map to CLI exit code 1.
class EmptyResultError : public std::runtime_error {
public:
    explicit EmptyResultError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace heatgen
