#pragma once
#include <stdexcept>
#include <string>

namespace negbeta {

// Bad input from the caller: malformed descriptors, words outside an image,
// enumeration budgets. The CLI maps these to exit code 2.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical failure: the answer exists but could not be certified.
// The CLI maps these to exit code 3.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BoundaryAmbiguous : NumericError {
    using NumericError::NumericError;
};

struct NoConvergence : NumericError {
    using NumericError::NumericError;
};

struct NotEventuallyPeriodic : NumericError {
    using NumericError::NumericError;
};

struct TruncationInsufficient : NumericError {
    using NumericError::NumericError;
};

struct NotInImage : InputError {
    using InputError::InputError;
};

struct MalformedCharacteristic : InputError {
    using InputError::InputError;
};

struct BudgetExceeded : InputError {
    using InputError::InputError;
};

struct IncomparablePrefix : InputError {
    using InputError::InputError;
};

} // namespace negbeta
