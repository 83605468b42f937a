#pragma once

#include <stdexcept>
#include <string>

namespace lyness {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input outside O+ or outside an operation's stated domain.
class DomainError : public Error {
public:
    using Error::Error;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

class StationaryPointError : public Error {
public:
    StationaryPointError() : Error("stationary point") {}
};

// Step-size underflow or loss of positivity; t is where the integrator gave up.
class IntegrationError : public Error {
public:
    IntegrationError(const std::string& what, double t) : Error(what), t_(t) {}
    double blame_t() const noexcept { return t_; }

private:
    double t_;
};

class NoReturnError : public Error {
public:
    using Error::Error;
};

class TargetNotOnOrbitError : public Error {
public:
    using Error::Error;
};

class DegenerateCircleError : public Error {
public:
    using Error::Error;
};

}  // namespace lyness
