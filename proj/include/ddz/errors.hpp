#pragma once

#include <stdexcept>
#include <string>

namespace ddz {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ShapeMismatch : public Error {
public:
    using Error::Error;
};

/// Standard part is zero (within tolerance) where an invertible dual number is required.
class NotAppreciable : public Error {
public:
    using Error::Error;
};

/// The existence condition A^π M A^π = 0 fails.
class NotDualDrazinInvertible : public Error {
public:
    using Error::Error;
};

class IndexTooLarge : public Error {
public:
    using Error::Error;
};

class HypothesisViolated : public Error {
public:
    using Error::Error;
};

class SpecInvalid : public Error {
public:
    using Error::Error;
};

class SchemaError : public Error {
public:
    using Error::Error;
};

class InexactInput : public Error {
public:
    using Error::Error;
};

class GenerationFailed : public Error {
public:
    using Error::Error;
};

}  // namespace ddz
