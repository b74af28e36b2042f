#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace monop {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (point off the half-plane,
/// disk parameter with |a| >= 1, x <= 0, sigma <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail);

    std::size_t offset() const noexcept { return offset_; }
    const std::vector<std::string>& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::vector<std::string> expected_;
};

class EvalError : public Error {
public:
    using Error::Error;
};

/// Division by (numerically) zero or a negative power of zero while
/// evaluating an expression. `offset` is the source position of the
/// offending operator, `point` the argument at which it was hit.
class PoleError : public EvalError {
public:
    PoleError(std::size_t offset, std::complex<double> point);

    std::size_t offset() const noexcept { return offset_; }
    std::complex<double> point() const noexcept { return point_; }

private:
    std::size_t offset_;
    std::complex<double> point_;
};

class QuadratureNoConvergence : public Error {
public:
    QuadratureNoConvergence(const std::string& what, double error_estimate);
    double error_estimate() const noexcept { return error_estimate_; }

private:
    double error_estimate_;
};

class TailBoundViolated : public Error {
public:
    using Error::Error;
};

/// beta(s) left the half-plane Re s > -1/2.
class BetaRangeError : public Error {
public:
    BetaRangeError(std::complex<double> s, std::complex<double> image);
    std::complex<double> argument() const noexcept { return s_; }
    std::complex<double> image() const noexcept { return image_; }

private:
    std::complex<double> s_;
    std::complex<double> image_;
};

class EigenFailure : public Error {
public:
    using Error::Error;
};

class UnknownBuiltin : public Error {
public:
    using Error::Error;
};

class ExponentOutOfRange : public Error {
public:
    using Error::Error;
};

/// A tabulated weight was queried off the table (non-integer or beyond its end).
class OffTableQuery : public Error {
public:
    using Error::Error;
};

class DegenerateNodes : public Error {
public:
    using Error::Error;
};

class ReTauNegative : public Error {
public:
    using Error::Error;
};

}  // namespace monop
