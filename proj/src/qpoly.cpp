#include "negbeta/qpoly.hpp"

#include "negbeta/errors.hpp"

#include <stdexcept>

namespace negbeta {

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const QPoly& p) {
    QPoly t = p;
    trim(t);
    return static_cast<int>(t.size()) - 1;
}

QPoly poly_sub(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    trim(r);
    return r;
}

QPoly poly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
    QPoly bb = b;
    trim(bb);
    if (bb.empty()) throw std::invalid_argument("polynomial division by zero");
    r = a;
    trim(r);
    q.assign(r.size() >= bb.size() ? r.size() - bb.size() + 1 : 0, mpq_class(0));
    const mpq_class& lead = bb.back();
    while (r.size() >= bb.size()) {
        std::size_t shift = r.size() - bb.size();
        mpq_class c = r.back() / lead;
        q[shift] = c;
        for (std::size_t i = 0; i < bb.size(); ++i) r[shift + i] -= c * bb[i];
        trim(r);
    }
    trim(q);
}

QPoly poly_mod(const QPoly& a, const QPoly& b) {
    QPoly q, r;
    poly_divmod(a, b, q, r);
    return r;
}

QPoly poly_gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        mpq_class lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

QPoly derivative(const QPoly& p) {
    QPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

mpq_class eval(const QPoly& p, const mpq_class& x) {
    mpq_class acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

int sign_at(const QPoly& p, const mpq_class& x) {
    return sgn(eval(p, x));
}

namespace {

int variations(const std::vector<QPoly>& chain, const mpq_class& x) {
    int count = 0;
    int last = 0;
    for (const auto& p : chain) {
        int s = sign_at(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++count;
        last = s;
    }
    return count;
}

} // namespace

int sturm_count(const QPoly& p, const mpq_class& lo, const mpq_class& hi) {
    QPoly a = p;
    trim(a);
    if (degree(a) <= 0) return 0;
    std::vector<QPoly> chain{a, derivative(a)};
    while (degree(chain.back()) > 0) {
        QPoly r = poly_mod(chain[chain.size() - 2], chain.back());
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        chain.push_back(r);
    }
    return variations(chain, lo) - variations(chain, hi);
}

QPoly poly_inverse_mod(const QPoly& a, const QPoly& m) {
    // Extended Euclid: track s with s*a = r (mod m).
    QPoly r0 = m, r1 = poly_mod(a, m);
    QPoly s0{}, s1{mpq_class(1)};
    while (degree(r1) > 0) {
        QPoly q, r;
        poly_divmod(r0, r1, q, r);
        QPoly s = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    if (r1.empty()) throw NumericError("element is not invertible modulo the base polynomial");
    mpq_class c = r1[0];
    for (auto& x : s1) x /= c;
    return poly_mod(s1, m);
}

} // namespace negbeta
