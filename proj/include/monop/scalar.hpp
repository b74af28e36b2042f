#pragma once

// Helpers that let one formula be written once and evaluated either in
// double precision (std::complex<double>) or in extended precision
// (BigComplex).

#include "monop/bigfloat.hpp"

#include <complex>
#include <string>

namespace monop {

using Complex = std::complex<double>;

/// A constant of the same scalar kind (and precision) as `like`.
inline Complex lift(Complex value, const Complex& /*like*/) { return value; }
inline BigComplex lift(Complex value, const BigComplex& like) { return BigComplex(value, like.precision()); }

inline Complex conj_of(const Complex& z) { return std::conj(z); }
inline BigComplex conj_of(const BigComplex& z) { return conj(z); }

inline double real_part(const Complex& z) { return z.real(); }
inline double real_part(const BigComplex& z) { return z.re.to_double(); }

inline Complex to_complex(const Complex& z) { return z; }
inline Complex to_complex(const BigComplex& z) { return z.to_complex(); }

/// %.17g, enough digits to round-trip every double.
std::string format_double(double x);
/// "(re,im)" with both parts in format_double.
std::string format_complex(Complex z);

}  // namespace monop
