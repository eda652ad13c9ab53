#pragma once
#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace negbeta {

// RAII owner of an mpfr_t.
class Real {
public:
    explicit Real(mpfr_prec_t prec = 128);
    Real(const Real& other);
    Real(Real&& other) noexcept;
    Real& operator=(const Real& other);
    Real& operator=(Real&& other) noexcept;
    ~Real();

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }
    std::string to_string(int digits) const;

private:
    mpfr_t v_;
    bool live_ = true;
};

// Closed interval [lo, hi] with outward rounding.
struct Interval {
    Real lo;
    Real hi;

    explicit Interval(mpfr_prec_t prec = 128);
    static Interval point(long v, mpfr_prec_t prec);
    static Interval from_rational(const mpq_class& q, mpfr_prec_t prec);
    static Interval from_bounds(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec);

    mpfr_prec_t precision() const { return lo.precision(); }
    bool contains_zero() const;
    double width() const;
    double mid() const;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval add_int(const Interval& a, long k);
// Division; throws BoundaryAmbiguous when the divisor contains zero.
Interval operator/(const Interval& a, const Interval& b);

mpq_class to_rational(const Real& r);

} // namespace negbeta
