#pragma once

#include <stdexcept>
#include <string>

namespace twoweight {

// Thrown when a requested instance exceeds a configured resource cap
// (lookup-table size, vertex count, bijection sweep size).
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when a machine-verified structural claim fails. This signals a
// bug in the construction, never a property of valid input.
struct VerificationBug : std::logic_error {
    using std::logic_error::logic_error;
};

}  // namespace twoweight
