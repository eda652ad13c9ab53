#pragma once
#include <gmpxx.h>

#include <vector>

namespace negbeta {

// Dense polynomial over Q, ascending coefficients, no trailing zeros.
using QPoly = std::vector<mpq_class>;

void trim(QPoly& p);
int degree(const QPoly& p); // -1 for the zero polynomial
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
// Quotient and remainder of a by b (b nonzero).
void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly poly_mod(const QPoly& a, const QPoly& b);
QPoly poly_gcd(QPoly a, QPoly b); // monic
QPoly derivative(const QPoly& p);
mpq_class eval(const QPoly& p, const mpq_class& x);
int sign_at(const QPoly& p, const mpq_class& x);
// Number of distinct real roots in the open interval (lo, hi); lo and hi must not be roots.
int sturm_count(const QPoly& p, const mpq_class& lo, const mpq_class& hi);
// s with s*a = 1 mod m, for a coprime to m.
QPoly poly_inverse_mod(const QPoly& a, const QPoly& m);

} // namespace negbeta
