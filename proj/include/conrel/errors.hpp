#pragma once

#include <stdexcept>

namespace conrel {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Precondition on domains/index sets violated (K not a subset of J_R, etc.).
struct DomainError : Error {
    using Error::Error;
};

/// Sum or join of values that disagree on the shared part.
struct IncompatibilityError : Error {
    using Error::Error;
};

/// A materialization would exceed the universe's tuple cap.
struct CapacityError : Error {
    using Error::Error;
};

/// Malformed external input: bad names, schema violations, unparsable sets.
struct InputError : Error {
    using Error::Error;
};

} // namespace conrel
