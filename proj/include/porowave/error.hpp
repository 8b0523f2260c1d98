#pragma once

#include <stdexcept>
#include <string>

namespace porowave {

// Root of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or incomplete input description.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Material or geometry that does not describe a physical medium.
class PhysicalError : public Error {
public:
    using Error::Error;
};

// Argument outside the domain where a quantity is defined (e.g. q0 before t0).
class DomainError : public Error {
public:
    using Error::Error;
};

// Path tracking, quadrature or linear solve failed to reach tolerance.
class NumericalError : public Error {
public:
    using Error::Error;
};

}  // namespace porowave
