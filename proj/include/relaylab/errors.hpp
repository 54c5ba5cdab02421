// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace relaylab {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function or an invalid parameter field.
class DomainError : public Error {
public:
    using Error::Error;
};

// rho1/d1^tau == rho_i/d_i^tau; the closed-form CCI expressions are undefined.
class DegenerateParams : public Error {
public:
    using Error::Error;
};

class SchemeUnsupported : public Error {
public:
    using Error::Error;
};

class BracketFailure : public Error {
public:
    using Error::Error;
};

// Series or quadrature did not reach its tolerance. Carries the best estimate.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double partial, double achieved_tol)
        : Error(what), partial_(partial), achieved_(achieved_tol) {}
    double partial_value() const noexcept { return partial_; }
    double achieved_tolerance() const noexcept { return achieved_; }

private:
    double partial_;
    double achieved_;
};

}  // namespace relaylab
