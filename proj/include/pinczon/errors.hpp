#pragma once

#include <stdexcept>
#include <string>

namespace pinczon {

/// Malformed arguments: size mismatches, inhomogeneous data, out-of-range indices.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct DegeneratePairing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Module actions violating the (bi)module axioms.
struct InvalidModule : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidStructure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A computation would exceed the configured size cap.
struct ResourceLimit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace pinczon
