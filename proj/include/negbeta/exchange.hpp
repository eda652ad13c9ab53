#pragma once
#include "negbeta/base.hpp"
#include "negbeta/field.hpp"
#include "negbeta/word.hpp"

#include <optional>
#include <string>

namespace negbeta {

// Substitution k -> 1 (00)^k applied `power` times.
Word phi_apply(const Word& w, int power);
DigitSequence phi_apply(const DigitSequence& s, int power);

// Left inverse of phi^power. Strict mode rejects a trailing block that is not
// followed by a 1; prefix mode drops it and decodes the longest complete part.
Word phi_decode(const Word& w, int power, bool strict = true);
DigitSequence phi_decode(const DigitSequence& s, int power);

// u_k = phi^k(1) for k >= 0 and u_(-1) = 0; v_k = phi^k(00).
Word u_block(int k);
Word v_block(int k);

struct GammaBound {
    int n = 0;
    std::size_t lu = 0, lv = 0, ln = 0;
    Base base = Base::integer(2);      // the root > 1 of X^ln - X - 1
    Base negative = Base::integer(-2); // -gamma_n as a base
    Interval enclosure{64};
    double value = 0;
    double residual = 0; // |1 - gamma^-lu - gamma^-lv|
};

GammaBound gamma_bound(int n, int precision_bits = 256);

struct Classification {
    bool coded = false;  // beta <= -gamma_0
    int level = -1;      // n with beta in (-gamma_n, -gamma_(n+1)]
    bool boundary = false; // d equals the sequence of the right endpoint
    std::string describe() const;
};

inline constexpr std::size_t kClassifyHorizon = 1000;

Classification classify_interval(const Base& base, std::size_t horizon = kClassifyHorizon);

struct ExchangeOptions {
    std::size_t digit_horizon = 60;
    double tol = 1e-12;
    int iteration_cap = 200;
    std::size_t compare_cap = 10000; // digits examined per bisection comparison
    bool recognize = true;           // upgrade to an exact base when the target is eventually periodic
};

struct ExchangeResult {
    Base base = Base::integer(-2);
    int level = -1;
    Word target_prefix;
    mpq_class lo, hi;          // final bisection bracket
    std::size_t digits_matched = 0;
    int iterations = 0;
    bool exact = false;        // recognized algebraic result
};

// beta in (-gamma_n, -gamma_(n+1)] with d(l_beta, beta) = phi^(n+1)(d(l_x, x)).
ExchangeResult upsilon_inverse(const Base& x, int n, const ExchangeOptions& opt = {});
// x <= -gamma_0 with d(l_beta, beta) = phi^(n+1)(d(l_x, x)) for the level n of beta.
ExchangeResult upsilon(const Base& beta, const ExchangeOptions& opt = {});

// Exact base whose corrected characteristic sequence is d, isolated in (lo, hi).
std::optional<Base> base_from_characteristic(const DigitSequence& d, const mpq_class& lo, const mpq_class& hi);

// prod_{k=-1}^{n-1} (1 + beta^-l(u_k)) - beta/(beta - 1), the value of u_n d(l_beta, beta).
FieldElement t_threshold(const Field& F, int n);
// Variant ending in (beta^l(u_n) - 2)/(beta^(l(u_n)-1)(beta - 1)); differs from the digits, kept for comparison.
FieldElement t_threshold_uncorrected(const Field& F, int n);
// f_beta(u_n d(l_beta, beta)) evaluated from digits.
FieldElement t_from_digits(const Field& F, int n, std::size_t horizon = 0);

} // namespace negbeta
