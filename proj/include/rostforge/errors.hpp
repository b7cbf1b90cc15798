#pragma once

#include <stdexcept>
#include <string>

namespace rostforge {

/// Raised when an operation is outside the implemented carrier
/// (symbolic handling may still be possible upstream).
class NotComputableError : public std::runtime_error {
public:
    explicit NotComputableError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rostforge
