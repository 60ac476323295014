#pragma once

#include <stdexcept>
#include <string>

namespace rml {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInputError : public Error {
public:
    using Error::Error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class SplitError : public Error {
public:
    using Error::Error;
};

class EmptyTripletError : public Error {
public:
    using Error::Error;
};

class NumericalFailureError : public Error {
public:
    NumericalFailureError(const std::string& what, long iteration)
        : Error(what + " (iteration " + std::to_string(iteration) + ")"),
          iteration_(iteration) {}

    long iteration() const { return iteration_; }

private:
    long iteration_;
};

}  // namespace rml
