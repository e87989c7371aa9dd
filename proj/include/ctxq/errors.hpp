#pragma once

#include <stdexcept>
#include <string>

namespace ctxq {

/// Base of every error raised by the library. The CLI maps subclasses to exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad caller input: unknown labels, cycles, mismatched dimensions, ...
class InputError : public Error {
public:
    using Error::Error;
};

class CycleError : public InputError {
public:
    using InputError::InputError;
};

class UnknownLabelError : public InputError {
public:
    using InputError::InputError;
};

class DuplicateLabelError : public InputError {
public:
    using InputError::InputError;
};

class EmptySubsetError : public InputError {
public:
    using InputError::InputError;
};

class InvalidDimension : public InputError {
public:
    using InputError::InputError;
};

class IndexOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class DimensionMismatch : public InputError {
public:
    using InputError::InputError;
};

class ParameterOutOfRange : public InputError {
public:
    using InputError::InputError;
};

class InvalidState : public InputError {
public:
    using InputError::InputError;
};

class CertainOutcomeError : public InputError {
public:
    using InputError::InputError;
};

class InvalidPermutation : public InputError {
public:
    using InputError::InputError;
};

/// An exhaustive enumeration would exceed the configured element cap.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

} // namespace ctxq
