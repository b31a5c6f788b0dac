#pragma once

#include <stdexcept>
#include <string>

namespace bgkmix {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonPositiveError : Error {
    using Error::Error;
};

// Inadmissible mixture parameters; maps to the validation-failure exit code.
struct ValidationError : Error {
    using Error::Error;
};

struct DegenerateDensityError : Error {
    using Error::Error;
};

struct OrderOutOfRangeError : Error {
    using Error::Error;
};

struct NotPositiveDefiniteError : Error {
    using Error::Error;
};

// Raised when a rate computation requires the unit relaxation-rate
// normalization nu11*n1 + nu12*n2 = nu22*n2 + nu21*n1 = 1 and it fails.
struct NotRateNormalizedError : Error {
    using Error::Error;
};

struct StepSizeError : Error {
    using Error::Error;
};

struct GridTooCoarseError : Error {
    using Error::Error;
};

struct NonConvergenceError : Error {
    using Error::Error;
};

} // namespace bgkmix
