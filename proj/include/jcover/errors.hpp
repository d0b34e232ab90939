#pragma once

#include <stdexcept>
#include <string>

namespace jcover {

// Base class for everything jcover throws on purpose.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad input: wrong sign, wrong residue, value outside the operation's domain.
struct domain_error : error {
    using error::error;
};

// A certified-rounding step failed; retry with more digits.
struct precision_error : error {
    using error::error;
};

// A caller violated a documented precondition (e.g. a type-mismatched
// partial map handed to the extension engine).
struct precondition_error : error {
    using error::error;
};

// An internal invariant did not hold; signals a bug, not bad input.
struct invariant_error : error {
    using error::error;
};

} // namespace jcover
