#include "monop/scalar.hpp"

#include <cstdio>

namespace monop {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string format_complex(Complex z) { return "(" + format_double(z.real()) + "," + format_double(z.imag()) + ")"; }

}  // namespace monop
