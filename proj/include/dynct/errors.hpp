#pragma once

#include <stdexcept>
#include <string>

namespace dynct {

/// Precondition or argument-contract failure (caller bug).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Inconsistent configuration (grid/geometry mismatch, invalid sizes).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Motion matrix C(t) is (numerically) singular.
struct SingularMotionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// h(theta) vanished; the dynamic inversion formula does not apply.
struct DegenerateMotionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Landmark set is collinear or otherwise rank-deficient.
struct DegenerateLandmarksError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A projection was requested with a zero search direction.
struct ZeroDirectionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Phantom does not fit inside the unit disk.
struct InvalidPhantomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Landmark detection found no foreground object.
struct NoObjectError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Landmark detection found only a tiny component.
struct TooSmallComponentError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// File I/O failure (malformed header, kind mismatch, truncation, ...).
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dynct
