#pragma once

#include <stdexcept>
#include <string>

namespace fslhate {

// Error taxonomy shared across the library. The CLI maps these onto its
// exit-code contract (2 usage/format, 3 numeric, 4 artifact mismatch).
struct InvalidArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Checkpoint/vocabulary pairing broken (hash or payload mismatch).
struct ArtifactMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace fslhate
