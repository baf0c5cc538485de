#pragma once

#include <stdexcept>

namespace hypershare {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad parameters or malformed requests. CLI maps these to exit code 2.
struct InvalidArgumentError : Error {
    using Error::Error;
};
struct NotBipartiteError : InvalidArgumentError {
    using InvalidArgumentError::InvalidArgumentError;
};
struct FieldTooSmallError : InvalidArgumentError {
    using InvalidArgumentError::InvalidArgumentError;
};
struct LemmaHypothesisError : InvalidArgumentError {
    using InvalidArgumentError::InvalidArgumentError;
};
struct ParseError : InvalidArgumentError {
    using InvalidArgumentError::InvalidArgumentError;
};

// Input exceeds a hard capacity cap. CLI maps these to exit code 3.
struct SizeError : Error {
    using Error::Error;
};

// Runtime verification failures. CLI maps these to exit code 1.
struct UnqualifiedPairError : Error {
    using Error::Error;
};
struct CorruptShareError : Error {
    using Error::Error;
};
struct IncompleteCoverError : Error {
    using Error::Error;
};
struct SolverError : Error {
    using Error::Error;
};

} // namespace hypershare
