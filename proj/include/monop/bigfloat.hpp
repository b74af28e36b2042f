#pragma once

// Extended-precision real and complex scalars on top of MPFR.
//
// Every value carries its own precision; binary operations round to the
// larger of the two operand precisions. There is no global precision state,
// so values may be used from several threads at once.

#include <mpfr.h>

#include <complex>
#include <utility>

namespace monop {

class BigReal {
public:
    explicit BigReal(mpfr_prec_t bits = 64);
    BigReal(double value, mpfr_prec_t bits);
    BigReal(long value, mpfr_prec_t bits);
    BigReal(int value, mpfr_prec_t bits) : BigReal(static_cast<long>(value), bits) {}
    BigReal(const BigReal& other);
    BigReal(BigReal&& other) noexcept;
    BigReal& operator=(const BigReal& other);
    BigReal& operator=(BigReal&& other) noexcept;
    ~BigReal();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    BigReal& operator+=(const BigReal& o);
    BigReal& operator-=(const BigReal& o);
    BigReal& operator*=(const BigReal& o);
    BigReal& operator/=(const BigReal& o);

    friend BigReal operator+(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a, const BigReal& b);
    friend BigReal operator*(const BigReal& a, const BigReal& b);
    friend BigReal operator/(const BigReal& a, const BigReal& b);
    friend BigReal operator-(const BigReal& a);

    friend BigReal sqrt(const BigReal& a);
    friend BigReal exp(const BigReal& a);
    friend BigReal log(const BigReal& a);
    friend BigReal sin(const BigReal& a);
    friend BigReal cos(const BigReal& a);
    friend BigReal atan2(const BigReal& y, const BigReal& x);
    friend BigReal hypot(const BigReal& a, const BigReal& b);

private:
    mpfr_t v_;
};

struct BigComplex {
    BigReal re;
    BigReal im;

    explicit BigComplex(mpfr_prec_t bits = 64) : re(bits), im(bits) {}
    BigComplex(std::complex<double> z, mpfr_prec_t bits) : re(z.real(), bits), im(z.imag(), bits) {}
    BigComplex(BigReal r, BigReal i) : re(std::move(r)), im(std::move(i)) {}

    mpfr_prec_t precision() const { return re.precision(); }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    BigComplex& operator+=(const BigComplex& o);
    BigComplex& operator-=(const BigComplex& o);
    BigComplex& operator*=(const BigComplex& o);
    BigComplex& operator/=(const BigComplex& o);
};

BigComplex operator+(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a, const BigComplex& b);
BigComplex operator*(const BigComplex& a, const BigComplex& b);
BigComplex operator/(const BigComplex& a, const BigComplex& b);
BigComplex operator-(const BigComplex& a);

BigComplex conj(const BigComplex& z);
/// |z|^2
BigReal norm(const BigComplex& z);
BigComplex exp(const BigComplex& z);
/// Principal logarithm.
BigComplex log(const BigComplex& z);
/// e^{i theta}
BigComplex unit_phase(double theta, mpfr_prec_t bits);

}  // namespace monop
