#pragma once
#include "negbeta/base.hpp"
#include "negbeta/interval.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace negbeta {

// Element of Q(beta). Exact coefficients modulo the base polynomial for
// algebraic bases; an interval enclosure for approximate ones.
struct FieldElement {
    std::vector<mpq_class> coeffs;
    Interval iv{64};
};

// Arithmetic context for one base at one working precision.
class Field {
public:
    explicit Field(Base base, mpfr_prec_t prec = 0);

    const Base& base() const { return base_; }
    bool exact() const { return base_.exact(); }
    mpfr_prec_t precision() const { return prec_; }

    FieldElement from_int(long v) const;
    FieldElement from_rational(const mpq_class& q) const;
    FieldElement beta() const;

    FieldElement add(const FieldElement& a, const FieldElement& b) const;
    FieldElement sub(const FieldElement& a, const FieldElement& b) const;
    FieldElement mul(const FieldElement& a, const FieldElement& b) const;
    FieldElement neg(const FieldElement& a) const;
    FieldElement inv(const FieldElement& a) const;
    FieldElement add_int(const FieldElement& a, long k) const;
    FieldElement mul_beta(const FieldElement& a) const;
    FieldElement pow_beta(long e) const;

    // floor(a); throws BoundaryAmbiguous when an approximate enclosure straddles an integer.
    long floor(const FieldElement& a) const;
    int sign(const FieldElement& a) const;
    int compare(const FieldElement& a, const FieldElement& b) const { return sign(sub(a, b)); }
    // Exact zero test (algebraic only).
    bool is_zero(const FieldElement& a) const;

    Interval enclose(const FieldElement& a, mpfr_prec_t prec) const;
    double to_double(const FieldElement& a) const;
    long double to_long_double(const FieldElement& a) const;
    std::string to_decimal(const FieldElement& a, int digits) const;
    // Hash key for exact elements.
    std::string key(const FieldElement& a) const;

private:
    Base base_;
    mpfr_prec_t prec_;
    std::size_t n_ = 0; // degree of the base polynomial

    FieldElement make_exact(std::vector<mpq_class> c) const;
};

} // namespace negbeta
