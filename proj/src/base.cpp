#include "negbeta/base.hpp"

#include "negbeta/errors.hpp"

#include <cmath>
#include <mutex>
#include <regex>
#include <sstream>

namespace negbeta {

struct Base::Impl {
    BaseKind kind = BaseKind::approximate;
    std::vector<mpz_class> poly;
    QPoly qpoly;
    mpq_class lo, hi;
    mpq_class value;
    int precision = kDefaultPrecision;
    int cap = kDefaultPrecisionCap;
    std::string text;

    mutable std::mutex mu;
    mutable mpq_class blo, bhi; // refined bracket
    mutable bool exact_root = false;
};

namespace {

mpq_class parse_rational(const std::string& s) {
    static const std::regex frac(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
    static const std::regex dec(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d+))?\s*$)");
    std::smatch m;
    if (std::regex_match(s, m, frac)) {
        mpz_class den(m[2].str());
        if (den == 0) throw InputError("zero denominator in '" + s + "'");
        mpq_class q(mpz_class(m[1].str()), den);
        q.canonicalize();
        return q;
    }
    if (std::regex_match(s, m, dec) && (m[2].length() + m[3].length()) > 0) {
        std::string digits = m[2].str() + m[3].str();
        mpz_class num(digits.empty() ? "0" : digits);
        long exp10 = -static_cast<long>(m[3].length());
        if (m[4].matched) exp10 += std::stol(m[4].str());
        mpz_class p10;
        mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
        mpq_class q = exp10 >= 0 ? mpq_class(num * p10) : mpq_class(num, p10);
        q.canonicalize();
        if (m[1].str() == "-") q = -q;
        return q;
    }
    throw InputError("cannot parse rational '" + s + "'");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::stringstream ss(s);
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

std::string trim_ws(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

Base Base::algebraic(std::vector<mpz_class> poly, const mpq_class& lo, const mpq_class& hi) {
    while (!poly.empty() && poly.back() == 0) poly.pop_back();
    if (poly.size() < 2) throw InputError("base polynomial must have degree at least 1");
    if (!(lo < hi)) throw InputError("isolating interval must satisfy lo < hi");
    auto impl = std::make_shared<Impl>();
    impl->kind = BaseKind::algebraic;
    impl->poly = poly;
    for (auto& c : poly) impl->qpoly.emplace_back(c);
    impl->lo = lo;
    impl->hi = hi;
    int slo = sign_at(impl->qpoly, lo), shi = sign_at(impl->qpoly, hi);
    if (slo == 0 || shi == 0) throw InputError("isolating interval endpoint is a root");
    if (slo == shi) throw InputError("polynomial has equal signs at the interval endpoints");
    if (sturm_count(impl->qpoly, lo, hi) != 1)
        throw InputError("isolating interval does not contain exactly one root");
    impl->blo = lo;
    impl->bhi = hi;
    if (poly.size() == 2) {
        mpq_class root(-poly[0], poly[1]);
        root.canonicalize();
        impl->blo = impl->bhi = root;
        impl->exact_root = true;
    }
    std::ostringstream os;
    os << "poly=";
    for (std::size_t i = 0; i < poly.size(); ++i) os << (i ? "," : "") << poly[i].get_str();
    os << ";interval=" << lo.get_str() << "," << hi.get_str();
    impl->text = os.str();
    Base b(impl);
    double v = b.approx();
    if (!(std::fabs(v) > 1.0)) throw InputError("base must satisfy |beta| > 1");
    return b;
}

Base Base::integer(long b) {
    if (std::labs(b) < 2) throw InputError("integer base must satisfy |beta| >= 2");
    return algebraic({mpz_class(-b), mpz_class(1)}, mpq_class(b) - mpq_class(1, 2), mpq_class(b) + mpq_class(1, 2));
}

Base Base::approximate(const mpq_class& value, int precision_bits) {
    if (precision_bits < 64) throw InputError("approximate bases need at least 64 bits of precision");
    if (abs(value) <= 1) throw InputError("base must satisfy |beta| > 1");
    auto impl = std::make_shared<Impl>();
    impl->kind = BaseKind::approximate;
    impl->value = value;
    impl->precision = precision_bits;
    impl->text = "beta=" + value.get_str();
    return Base(impl);
}

Base Base::parse(const std::string& descriptor, int precision_bits) {
    std::string d = trim_ws(descriptor);
    if (d.rfind("beta=", 0) == 0) {
        mpq_class v = parse_rational(d.substr(5));
        if (v.get_den() == 1) return integer(v.get_num().get_si());
        Base b = approximate(v, precision_bits);
        return b;
    }
    if (d.rfind("poly=", 0) == 0) {
        auto parts = split(d, ';');
        if (parts.size() != 2 || trim_ws(parts[1]).rfind("interval=", 0) != 0)
            throw InputError("expected poly=<c0,...,ck>;interval=<lo>,<hi>");
        std::vector<mpz_class> coeffs;
        for (auto& c : split(parts[0].substr(5), ',')) {
            std::string t = trim_ws(c);
            if (!std::regex_match(t, std::regex(R"([+-]?\d+)"))) throw InputError("bad coefficient '" + c + "'");
            coeffs.emplace_back(t[0] == '+' ? t.substr(1) : t);
        }
        auto iv = split(trim_ws(parts[1]).substr(9), ',');
        if (iv.size() != 2) throw InputError("interval needs two endpoints");
        return algebraic(coeffs, parse_rational(iv[0]), parse_rational(iv[1]));
    }
    throw InputError("base descriptor must start with 'beta=' or 'poly=': '" + descriptor + "'");
}

BaseKind Base::kind() const { return impl_->kind; }

int Base::sign() const {
    if (impl_->kind == BaseKind::approximate) return sgn(impl_->value);
    return sgn(impl_->lo + impl_->hi);
}

int Base::degree() const { return static_cast<int>(impl_->poly.size()) - 1; }
const std::vector<mpz_class>& Base::poly() const { return impl_->poly; }
const QPoly& Base::qpoly() const { return impl_->qpoly; }
const mpq_class& Base::lo() const { return impl_->lo; }
const mpq_class& Base::hi() const { return impl_->hi; }
const mpq_class& Base::value() const { return impl_->value; }
int Base::precision() const { return impl_->precision; }
int Base::precision_cap() const { return impl_->cap; }

Base Base::with_precision(int bits) const {
    if (impl_->kind == BaseKind::approximate) {
        Base b = approximate(impl_->value, bits);
        return b.with_precision_cap(impl_->cap);
    }
    auto impl = std::make_shared<Impl>();
    impl->kind = impl_->kind;
    impl->poly = impl_->poly;
    impl->qpoly = impl_->qpoly;
    impl->lo = impl_->lo;
    impl->hi = impl_->hi;
    impl->precision = bits;
    impl->cap = impl_->cap;
    impl->text = impl_->text;
    std::lock_guard<std::mutex> g(impl_->mu);
    impl->blo = impl_->blo;
    impl->bhi = impl_->bhi;
    impl->exact_root = impl_->exact_root;
    return Base(impl);
}

Base Base::with_precision_cap(int bits) const {
    auto impl = std::make_shared<Impl>();
    impl->kind = impl_->kind;
    impl->poly = impl_->poly;
    impl->qpoly = impl_->qpoly;
    impl->lo = impl_->lo;
    impl->hi = impl_->hi;
    impl->value = impl_->value;
    impl->precision = impl_->precision;
    impl->cap = bits;
    impl->text = impl_->text;
    std::lock_guard<std::mutex> g(impl_->mu);
    impl->blo = impl_->blo;
    impl->bhi = impl_->bhi;
    impl->exact_root = impl_->exact_root;
    return Base(impl);
}

std::pair<mpq_class, mpq_class> Base::bracket(int bits) const {
    if (impl_->kind == BaseKind::approximate) return {impl_->value, impl_->value};
    std::lock_guard<std::mutex> g(impl_->mu);
    mpq_class target(1);
    target /= mpq_class(mpz_class(1) << bits);
    if (impl_->exact_root) return {impl_->blo, impl_->bhi};
    const QPoly& p = impl_->qpoly;
    int slo = sign_at(p, impl_->blo);
    while (impl_->bhi - impl_->blo > target) {
        mpq_class mid = (impl_->blo + impl_->bhi) / 2;
        int s = sign_at(p, mid);
        if (s == 0) {
            impl_->blo = impl_->bhi = mid;
            impl_->exact_root = true;
            break;
        }
        if (s == slo) impl_->blo = mid;
        else impl_->bhi = mid;
    }
    return {impl_->blo, impl_->bhi};
}

Interval Base::enclosure(mpfr_prec_t prec) const {
    if (impl_->kind == BaseKind::approximate) return Interval::from_rational(impl_->value, prec);
    auto [a, b] = bracket(static_cast<int>(prec));
    return Interval::from_bounds(a, b, prec + 8);
}

double Base::approx() const {
    if (impl_->kind == BaseKind::approximate) return impl_->value.get_d();
    return enclosure(64).mid();
}

long double Base::approx_ld() const {
    Interval iv = enclosure(96);
    Real m(128);
    mpfr_add(m.get(), iv.lo.get(), iv.hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_long_double();
}

std::string Base::descriptor() const { return impl_->text; }

} // namespace negbeta
