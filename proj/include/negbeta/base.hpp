#pragma once
#include "negbeta/interval.hpp"
#include "negbeta/qpoly.hpp"

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

namespace negbeta {

enum class BaseKind { algebraic, approximate };

inline constexpr int kDefaultPrecision = 256;
inline constexpr int kDefaultPrecisionCap = 4096;

// A real base beta with |beta| > 1, either exact (a root of an integer
// polynomial isolated in a rational interval) or approximate (a rational
// value handled through MPFR enclosures at a working precision).
class Base {
public:
    // poly is ascending: poly[i] multiplies X^i.
    static Base algebraic(std::vector<mpz_class> poly, const mpq_class& lo, const mpq_class& hi);
    static Base integer(long b);
    static Base approximate(const mpq_class& value, int precision_bits = kDefaultPrecision);
    // "beta=<decimal>" or "poly=c0,...,ck;interval=lo,hi". Integer decimals are exact.
    static Base parse(const std::string& descriptor, int precision_bits = kDefaultPrecision);

    BaseKind kind() const;
    bool exact() const { return kind() == BaseKind::algebraic; }
    int sign() const;
    int degree() const;
    const std::vector<mpz_class>& poly() const;
    const QPoly& qpoly() const;
    const mpq_class& lo() const;
    const mpq_class& hi() const;
    const mpq_class& value() const;
    int precision() const;
    int precision_cap() const;
    Base with_precision(int bits) const;
    Base with_precision_cap(int bits) const;

    // Enclosure of beta with width about 2^-prec.
    Interval enclosure(mpfr_prec_t prec) const;
    // Rational bracket of width at most 2^-bits around beta (algebraic kind).
    std::pair<mpq_class, mpq_class> bracket(int bits) const;
    double approx() const;
    long double approx_ld() const;
    std::string descriptor() const;

private:
    struct Impl;
    std::shared_ptr<const Impl> impl_;
    explicit Base(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
};

} // namespace negbeta
