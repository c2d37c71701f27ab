#pragma once

#include <stdexcept>
#include <string>

namespace wavefuse {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- image IO ---
struct FileNotFound : Error { using Error::Error; };
struct UnsupportedFormat : Error { using Error::Error; };
struct ImageTooSmall : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

// --- transforms / fusion ---
struct NotGrayscale : Error { using Error::Error; };
struct WrongTransformKind : Error { using Error::Error; };
struct TransformMismatch : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct EmptyBand : Error { using Error::Error; };

// --- optimizer / metrics / config ---
struct LengthMismatch : Error { using Error::Error; };
struct InvalidConfig : Error { using Error::Error; };
struct DegenerateInput : Error { using Error::Error; };

} // namespace wavefuse
