#pragma once

#include <stdexcept>
#include <string>

namespace delocx {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// group construction / queries
struct NotBijective : Error { using Error::Error; };
struct ClosureCapExceeded : Error { using Error::Error; };
struct ElementNotInGroup : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };

// complexes and actions
struct NotRegular : Error { using Error::Error; };
struct NotPure : Error { using Error::Error; };
struct NotSimplicialQuotient : Error { using Error::Error; };
struct DegreeOutOfRange : Error { using Error::Error; };

// pairings and pushforwards
struct ComplexMismatch : Error { using Error::Error; };
struct NotOriented : Error { using Error::Error; };
struct DegreeMismatch : Error { using Error::Error; };
struct OrientationMissing : Error { using Error::Error; };
struct NotEquivariant : Error { using Error::Error; };

// bundles
struct InvalidBundle : Error { using Error::Error; };

// numerics
struct PairNotPreserved : Error { using Error::Error; };

// input handling
struct InputError : Error { using Error::Error; };

} // namespace delocx
