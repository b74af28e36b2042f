#include "monop/bigfloat.hpp"

#include <algorithm>

namespace monop {

namespace {

mpfr_prec_t wider(const BigReal& a, const BigReal& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

BigReal::BigReal(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

BigReal::BigReal(double value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, value, MPFR_RNDN);
}

BigReal::BigReal(long value, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, value, MPFR_RNDN);
}

BigReal::BigReal(const BigReal& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigReal::BigReal(BigReal&& other) noexcept {
    // Steal the limbs; leave `other` as a valid minimal-precision zero.
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
}

BigReal& BigReal::operator=(const BigReal& other) {
    if (this != &other) {
        if (precision() < other.precision()) mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigReal& BigReal::operator=(BigReal&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

BigReal::~BigReal() { mpfr_clear(v_); }

BigReal& BigReal::operator+=(const BigReal& o) {
    if (precision() < o.precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator-=(const BigReal& o) {
    if (precision() < o.precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator*=(const BigReal& o) {
    if (precision() < o.precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigReal& BigReal::operator/=(const BigReal& o) {
    if (precision() < o.precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
}

BigReal operator+(const BigReal& a, const BigReal& b) {
    BigReal r(wider(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a, const BigReal& b) {
    BigReal r(wider(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator*(const BigReal& a, const BigReal& b) {
    BigReal r(wider(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator/(const BigReal& a, const BigReal& b) {
    BigReal r(wider(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigReal operator-(const BigReal& a) {
    BigReal r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigReal sqrt(const BigReal& a) {
    BigReal r(a.precision());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigReal exp(const BigReal& a) {
    BigReal r(a.precision());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigReal log(const BigReal& a) {
    BigReal r(a.precision());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigReal sin(const BigReal& a) {
    BigReal r(a.precision());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigReal cos(const BigReal& a) {
    BigReal r(a.precision());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
}

BigReal atan2(const BigReal& y, const BigReal& x) {
    BigReal r(wider(y, x));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
}

BigReal hypot(const BigReal& a, const BigReal& b) {
    BigReal r(wider(a, b));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
    re += o.re;
    im += o.im;
    return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

BigComplex& BigComplex::operator*=(const BigComplex& o) { return *this = *this * o; }
BigComplex& BigComplex::operator/=(const BigComplex& o) { return *this = *this / o; }

BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    // Plain formula: the extra working bits make overflow scaling unnecessary.
    BigReal den = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

BigComplex operator-(const BigComplex& a) { return {-a.re, -a.im}; }

BigComplex conj(const BigComplex& z) { return {z.re, -z.im}; }

BigReal norm(const BigComplex& z) { return z.re * z.re + z.im * z.im; }

BigComplex exp(const BigComplex& z) {
    BigReal m = exp(z.re);
    return {m * cos(z.im), m * sin(z.im)};
}

BigComplex log(const BigComplex& z) { return {log(hypot(z.re, z.im)), atan2(z.im, z.re)}; }

BigComplex unit_phase(double theta, mpfr_prec_t bits) {
    BigReal t(theta, bits);
    return {cos(t), sin(t)};
}

}  // namespace monop
