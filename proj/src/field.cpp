#include "negbeta/field.hpp"

#include "negbeta/errors.hpp"

#include <cmath>

namespace negbeta {

namespace {

constexpr mpfr_prec_t kExactStart = 96;
constexpr mpfr_prec_t kExactLimit = 1 << 16;

long floor_of(const Real& r) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDD);
    if (!z.fits_slong_p()) throw NumericError("digit out of range");
    return z.get_si();
}

} // namespace

Field::Field(Base base, mpfr_prec_t prec) : base_(std::move(base)) {
    prec_ = prec > 0 ? prec : base_.precision();
    if (base_.exact()) n_ = static_cast<std::size_t>(base_.degree());
}

FieldElement Field::make_exact(std::vector<mpq_class> c) const {
    QPoly p(c.begin(), c.end());
    trim(p);
    if (p.size() > n_) p = poly_mod(p, base_.qpoly());
    p.resize(n_, mpq_class(0));
    FieldElement e;
    e.coeffs = std::move(p);
    return e;
}

FieldElement Field::from_int(long v) const {
    return from_rational(mpq_class(v));
}

FieldElement Field::from_rational(const mpq_class& q) const {
    if (exact()) return make_exact({q});
    FieldElement e;
    e.iv = Interval::from_rational(q, prec_);
    return e;
}

FieldElement Field::beta() const {
    if (exact()) return make_exact({mpq_class(0), mpq_class(1)});
    FieldElement e;
    e.iv = base_.enclosure(prec_);
    return e;
}

FieldElement Field::add(const FieldElement& a, const FieldElement& b) const {
    FieldElement r;
    if (exact()) {
        r.coeffs.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) r.coeffs[i] = a.coeffs[i] + b.coeffs[i];
    } else {
        r.iv = a.iv + b.iv;
    }
    return r;
}

FieldElement Field::sub(const FieldElement& a, const FieldElement& b) const {
    FieldElement r;
    if (exact()) {
        r.coeffs.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) r.coeffs[i] = a.coeffs[i] - b.coeffs[i];
    } else {
        r.iv = a.iv - b.iv;
    }
    return r;
}

FieldElement Field::mul(const FieldElement& a, const FieldElement& b) const {
    if (exact()) return make_exact(poly_mul(a.coeffs, b.coeffs));
    FieldElement r;
    r.iv = a.iv * b.iv;
    return r;
}

FieldElement Field::neg(const FieldElement& a) const {
    FieldElement r;
    if (exact()) {
        r.coeffs.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) r.coeffs[i] = -a.coeffs[i];
    } else {
        r.iv = -a.iv;
    }
    return r;
}

FieldElement Field::inv(const FieldElement& a) const {
    if (exact()) {
        QPoly p(a.coeffs.begin(), a.coeffs.end());
        trim(p);
        if (p.empty()) throw NumericError("inverse of zero");
        return make_exact(poly_inverse_mod(p, base_.qpoly()));
    }
    FieldElement r;
    r.iv = Interval::point(1, prec_) / a.iv;
    return r;
}

FieldElement Field::add_int(const FieldElement& a, long k) const {
    if (exact()) {
        FieldElement r = a;
        r.coeffs[0] += k;
        return r;
    }
    FieldElement r;
    r.iv = negbeta::add_int(a.iv, k);
    return r;
}

FieldElement Field::mul_beta(const FieldElement& a) const {
    if (!exact()) return mul(a, beta());
    // Shift coefficients up and fold the top one with the base polynomial.
    std::vector<mpq_class> c(n_ + 1);
    for (std::size_t i = 0; i < n_; ++i) c[i + 1] = a.coeffs[i];
    const auto& P = base_.qpoly();
    if (c[n_] != 0) {
        mpq_class f = c[n_] / P[n_];
        for (std::size_t i = 0; i <= n_; ++i) c[i] -= f * P[i];
    }
    c.resize(n_);
    FieldElement r;
    r.coeffs = std::move(c);
    return r;
}

FieldElement Field::pow_beta(long e) const {
    FieldElement b = e >= 0 ? beta() : inv(beta());
    FieldElement r = from_int(1);
    for (long i = 0; i < std::labs(e); ++i) r = mul(r, b);
    return r;
}

Interval Field::enclose(const FieldElement& a, mpfr_prec_t prec) const {
    if (!exact()) return a.iv;
    Interval b = base_.enclosure(prec);
    Interval acc = Interval::point(0, prec + 8);
    for (std::size_t i = n_; i-- > 0;) {
        acc = acc * b + Interval::from_rational(a.coeffs[i], prec + 8);
    }
    return acc;
}

bool Field::is_zero(const FieldElement& a) const {
    if (!exact()) return false;
    QPoly p(a.coeffs.begin(), a.coeffs.end());
    trim(p);
    if (p.empty()) return true;
    // a(beta) = 0 iff gcd(P, a) vanishes at beta, the only root of P in (lo, hi).
    QPoly g = poly_gcd(base_.qpoly(), p);
    if (degree(g) < 1) return false;
    return sturm_count(g, base_.lo(), base_.hi()) > 0;
}

long Field::floor(const FieldElement& a) const {
    if (!exact()) {
        long f0 = floor_of(a.iv.lo), f1 = floor_of(a.iv.hi);
        if (f0 != f1) throw BoundaryAmbiguous("floor undecided at " + std::to_string(prec_) + " bits");
        return f0;
    }
    bool tested = false;
    for (mpfr_prec_t p = kExactStart; p <= kExactLimit; p *= 2) {
        Interval iv = enclose(a, p);
        long f0 = floor_of(iv.lo), f1 = floor_of(iv.hi);
        if (f0 == f1) return f0;
        if (!tested && f1 == f0 + 1) {
            tested = true;
            if (is_zero(add_int(a, -f1))) return f1;
        }
    }
    throw BoundaryAmbiguous("exact floor did not separate within the refinement limit");
}

int Field::sign(const FieldElement& a) const {
    if (!exact()) {
        if (a.iv.contains_zero()) throw BoundaryAmbiguous("sign undecided at " + std::to_string(prec_) + " bits");
        return mpfr_sgn(a.iv.lo.get()) > 0 ? 1 : -1;
    }
    if (is_zero(a)) return 0;
    for (mpfr_prec_t p = kExactStart; p <= kExactLimit; p *= 2) {
        Interval iv = enclose(a, p);
        if (!iv.contains_zero()) return mpfr_sgn(iv.lo.get()) > 0 ? 1 : -1;
    }
    throw BoundaryAmbiguous("exact sign did not separate within the refinement limit");
}

double Field::to_double(const FieldElement& a) const {
    if (!exact()) return a.iv.mid();
    // Raise the precision until the enclosure pins down the double.
    for (mpfr_prec_t prec = 96;; prec *= 2) {
        Interval iv = enclose(a, prec);
        double m = iv.mid();
        if (prec >= 8192 || iv.width() <= std::fabs(m) * 0x1p-54 || iv.width() < 1e-300) return m;
    }
}

long double Field::to_long_double(const FieldElement& a) const {
    Interval iv = enclose(a, 128);
    Real m(160);
    mpfr_add(m.get(), iv.lo.get(), iv.hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_long_double();
}

std::string Field::to_decimal(const FieldElement& a, int digits) const {
    mpfr_prec_t p = static_cast<mpfr_prec_t>(digits * 3.33) + 32;
    Interval iv = enclose(a, p);
    Real m(p + 8);
    mpfr_add(m.get(), iv.lo.get(), iv.hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_string(digits);
}

std::string Field::key(const FieldElement& a) const {
    std::string k;
    for (const auto& c : a.coeffs) {
        k += c.get_str();
        k.push_back('|');
    }
    return k;
}

} // namespace negbeta
