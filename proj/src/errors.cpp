#include "monop/errors.hpp"

#include <sstream>

namespace monop {

namespace {

std::string format_parse(std::size_t offset, const std::vector<std::string>& expected,
                         const std::string& detail) {
    std::ostringstream os;
    os << "parse error at offset " << offset;
    if (!detail.empty()) os << ": " << detail;
    if (!expected.empty()) {
        os << " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
            if (i) os << " or ";
            os << expected[i];
        }
        os << ")";
    }
    return os.str();
}

std::string format_point(std::complex<double> z) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << z.real() << "," << z.imag() << ")";
    return os.str();
}

}  // namespace

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& detail)
    : Error(format_parse(offset, expected, detail)), offset_(offset), expected_(std::move(expected)) {}

PoleError::PoleError(std::size_t offset, std::complex<double> point)
    : EvalError("pole at operator offset " + std::to_string(offset) + ", s = " + format_point(point)),
      offset_(offset),
      point_(point) {}

QuadratureNoConvergence::QuadratureNoConvergence(const std::string& what, double error_estimate)
    : Error(what + " (error estimate " + std::to_string(error_estimate) + ")"),
      error_estimate_(error_estimate) {}

BetaRangeError::BetaRangeError(std::complex<double> s, std::complex<double> image)
    : Error("beta(" + format_point(s) + ") = " + format_point(image) + " is outside Re > -1/2"),
      s_(s),
      image_(image) {}

}  // namespace monop
