#pragma once

#include <stdexcept>
#include <string>

namespace curvfem {

/// Base class for all errors raised by this library.  Everything derives
/// from std::runtime_error so callers can catch coarsely if they want.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Query point too close to the medial axis of a shape; the distance
/// gradient (and everything derived from it) is undefined there.
struct MedialAxisPoint : Error {
    using Error::Error;
};

/// A generated or supplied triangle has (numerically) zero area.
struct DegenerateTriangle : Error {
    using Error::Error;
};

/// An edge of a triangulated surface is not shared by exactly two
/// consistently oriented triangles.
struct NonManifoldEdge : Error {
    using Error::Error;
};

/// The extracted cut surface violates a structural expectation, e.g. a
/// cut edge not shared by exactly two cut polygons.
struct InconsistentTopology : Error {
    using Error::Error;
};

/// An operation was asked to work on a surface with no elements.
struct EmptySurface : Error {
    using Error::Error;
};

/// The requested operation does not exist for this kind of surface.
struct NotApplicable : Error {
    using Error::Error;
};

/// Vector/matrix sizes do not match.
struct DimensionMismatch : Error {
    using Error::Error;
};

/// An input that must be strictly positive (or properly ordered) is not.
struct NonPositiveInput : Error {
    using Error::Error;
};

/// Invalid run configuration (bad flag combination, bad level list, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Factorization pivot collapsed; the matrix is singular to working
/// precision.
struct SingularMatrix : Error {
    using Error::Error;
};

}  // namespace curvfem
