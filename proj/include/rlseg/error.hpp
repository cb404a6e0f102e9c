#pragma once

#include <stdexcept>
#include <string>

namespace rlseg {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A run row whose lengths do not add up to the document width.
class InvalidRunMatrix : public Error {
public:
    using Error::Error;
};

class OutOfBounds : public Error {
public:
    using Error::Error;
};

class CursorExhausted : public Error {
public:
    using Error::Error;
};

class DegenerateGroup : public Error {
public:
    using Error::Error;
};

// Raised by row segmentation on a whitespace-only block.
class EmptyBlock : public Error {
public:
    using Error::Error;
};

class EmptyLine : public Error {
public:
    using Error::Error;
};

class EmptyGroundTruth : public Error {
public:
    using Error::Error;
};

class InfeasibleSpec : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed PBM / RLC / JSON input.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace rlseg
