#include "negbeta/interval.hpp"

#include "negbeta/errors.hpp"

#include <algorithm>
#include <utility>

namespace negbeta {

Real::Real(mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
}

Real::Real(const Real& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
    mpfr_init2(v_, other.precision());
    mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

Real& Real::operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

Real::~Real() {
    if (live_) mpfr_clear(v_);
}

std::string Real::to_string(int digits) const {
    char* buf = nullptr;
    std::string fmt = "%." + std::to_string(digits) + "Rg";
    mpfr_asprintf(&buf, fmt.c_str(), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

Interval::Interval(mpfr_prec_t prec) : lo(prec), hi(prec) {}

Interval Interval::point(long v, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_si(r.lo.get(), v, MPFR_RNDD);
    mpfr_set_si(r.hi.get(), v, MPFR_RNDU);
    return r;
}

Interval Interval::from_rational(const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::from_bounds(const mpq_class& lo, const mpq_class& hi, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo.get(), lo.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi.get(), hi.get_mpq_t(), MPFR_RNDU);
    return r;
}

bool Interval::contains_zero() const {
    return mpfr_sgn(lo.get()) <= 0 && mpfr_sgn(hi.get()) >= 0;
}

double Interval::width() const {
    Real w(precision());
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    return w.to_double();
}

double Interval::mid() const {
    Real m(precision() + 1);
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_double();
}

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_add(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(std::max(a.precision(), b.precision()));
    mpfr_sub(r.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
    mpfr_sub(r.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
    return r;
}

Interval operator-(const Interval& a) {
    Interval r(a.precision());
    mpfr_neg(r.lo.get(), a.hi.get(), MPFR_RNDD);
    mpfr_neg(r.hi.get(), a.lo.get(), MPFR_RNDU);
    return r;
}

Interval add_int(const Interval& a, long k) {
    Interval r(a.precision());
    mpfr_add_si(r.lo.get(), a.lo.get(), k, MPFR_RNDD);
    mpfr_add_si(r.hi.get(), a.hi.get(), k, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    mpfr_prec_t prec = std::max(a.precision(), b.precision());
    Interval r(prec);
    Real t(prec);
    const Real* as[2] = {&a.lo, &a.hi};
    const Real* bs[2] = {&b.lo, &b.hi};
    bool first = true;
    for (auto* x : as) {
        for (auto* y : bs) {
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (first || mpfr_less_p(t.get(), r.lo.get())) mpfr_set(r.lo.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (first || mpfr_greater_p(t.get(), r.hi.get())) mpfr_set(r.hi.get(), t.get(), MPFR_RNDU);
            first = false;
        }
    }
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) throw BoundaryAmbiguous("interval division by an enclosure of zero");
    mpfr_prec_t prec = std::max(a.precision(), b.precision());
    Interval inv(prec);
    mpfr_ui_div(inv.lo.get(), 1, b.hi.get(), MPFR_RNDD);
    mpfr_ui_div(inv.hi.get(), 1, b.lo.get(), MPFR_RNDU);
    return a * inv;
}

mpq_class to_rational(const Real& r) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), r.get());
    return q;
}

} // namespace negbeta
