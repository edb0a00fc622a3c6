#pragma once

#include <stdexcept>
#include <string>

namespace opsym {

// Bad arguments, malformed files, violated operation preconditions. CLI exit code 2.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Iteration caps exceeded, non-finite values where finite ones are required. CLI exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace opsym
