#include "negbeta/exchange.hpp"

#include "negbeta/errors.hpp"
#include "negbeta/numeration.hpp"
#include "negbeta/ordering.hpp"

#include <cmath>
#include <functional>
#include <sstream>

namespace negbeta {

Word phi_apply(const Word& w, int power) {
    Word cur = w;
    for (int p = 0; p < power; ++p) {
        Word out;
        for (int k : cur) {
            if (k < 0) throw InputError("negative digit in phi argument");
            out.push_back(1);
            out.insert(out.end(), static_cast<std::size_t>(2 * k), 0);
        }
        cur = std::move(out);
    }
    return cur;
}

DigitSequence phi_apply(const DigitSequence& s, int power) {
    return DigitSequence::make(phi_apply(s.preperiod, power), phi_apply(s.period, power));
}

namespace {

// One layer of decoding. `closed` means the word is followed by a 1, so its
// final zero run is complete.
Word decode_layer(const Word& w, bool closed, bool strict) {
    Word out;
    std::size_t i = 0;
    if (!w.empty() && w[0] != 1) {
        if (strict) throw NotInImage("block does not start with 1");
        return out;
    }
    while (i < w.size()) {
        std::size_t j = i + 1, zeros = 0;
        while (j < w.size() && w[j] == 0) {
            ++zeros;
            ++j;
        }
        bool at_end = j == w.size();
        if (!at_end && w[j] != 1) {
            if (strict) throw NotInImage("digit " + std::to_string(w[j]) + " outside {0,1}");
            return out;
        }
        if (at_end && !closed && !strict) return out;
        if (zeros % 2 != 0) {
            if (strict) throw NotInImage("odd run of zeros");
            return out;
        }
        out.push_back(static_cast<int>(zeros / 2));
        i = j;
    }
    return out;
}

} // namespace

Word phi_decode(const Word& w, int power, bool strict) {
    Word cur = w;
    for (int p = 0; p < power; ++p) cur = decode_layer(cur, false, strict);
    return cur;
}

DigitSequence phi_decode(const DigitSequence& s, int power) {
    DigitSequence cur = s;
    for (int p = 0; p < power; ++p) {
        std::size_t j = 0;
        while (j < cur.period.size() && cur.period[j] != 1) ++j;
        if (j == cur.period.size()) throw NotInImage("tail has no block start");
        Word pre = concat(cur.preperiod, Word(cur.period.begin(), cur.period.begin() + static_cast<long>(j)));
        Word per(cur.period.begin() + static_cast<long>(j), cur.period.end());
        per.insert(per.end(), cur.period.begin(), cur.period.begin() + static_cast<long>(j));
        cur = DigitSequence::make(decode_layer(pre, true, true), decode_layer(per, true, true));
    }
    return cur;
}

Word u_block(int k) {
    if (k < -1) throw InputError("u_k is defined for k >= -1");
    if (k == -1) return {0};
    return phi_apply(Word{1}, k);
}

Word v_block(int k) {
    if (k < 0) throw InputError("v_k is defined for k >= 0");
    return phi_apply(Word{0, 0}, k);
}

GammaBound gamma_bound(int n, int precision_bits) {
    if (n < 0) throw InputError("gamma index must be non-negative");
    GammaBound g;
    g.n = n;
    g.lu = u_block(n).size();
    g.lv = v_block(n).size();
    g.ln = std::max(g.lu, g.lv);
    std::vector<mpz_class> p(g.ln + 1, 0), q(g.ln + 1, 0);
    p[0] = -1;
    p[1] = -1;
    p[g.ln] = 1;
    for (std::size_t k = 0; k <= g.ln; ++k) q[k] = k % 2 == 1 ? mpz_class(-p[k]) : p[k];
    g.base = Base::algebraic(p, 1, 2).with_precision(precision_bits);
    g.negative = Base::algebraic(q, -2, -1).with_precision(precision_bits);
    g.enclosure = g.base.enclosure(precision_bits);
    g.value = g.base.approx();
    long double v = g.base.approx_ld();
    g.residual = static_cast<double>(std::fabs(1.0L - std::pow(v, -static_cast<long double>(g.lu)) -
                                               std::pow(v, -static_cast<long double>(g.lv))));
    return g;
}

std::string Classification::describe() const {
    std::ostringstream os;
    if (coded) os << "coded_range";
    else os << "level " << level;
    if (boundary) os << " (boundary)";
    return os.str();
}

namespace {

DigitSequence bound_sequence(int k) {
    Word prev = u_block(k - 1);
    return DigitSequence::make(u_block(k), concat(prev, prev));
}

inline constexpr int kMaxLevel = 16;

Relation compare_prefix(const Word& a, const Word& b, std::size_t& witness) {
    OrderResult r = alt_compare(a, b, -1);
    witness = r.witness;
    return r.relation;
}

} // namespace

Classification classify_interval(const Base& base, std::size_t horizon) {
    if (base.sign() > 0) throw InputError("classification needs beta < -1");
    SequenceResult d = characteristic_sequence(base, SeqMode::corrected, horizon);
    auto rel = [&](int k) {
        DigitSequence b = bound_sequence(k);
        if (d.periodic) return alt_compare(d.seq, b, -1).relation;
        std::size_t w = 0;
        Relation r = compare_prefix(d.prefix, b.prefix(d.prefix.size()), w);
        if (r == Relation::equal)
            throw BoundaryAmbiguous("characteristic sequence matches a level bound through the horizon");
        return r;
    };
    Classification c;
    Relation r0 = rel(0);
    if (r0 != Relation::greater) {
        c.coded = true;
        c.boundary = r0 == Relation::equal;
        return c;
    }
    for (int k = 0; k < kMaxLevel; ++k) {
        Relation r = rel(k + 1);
        if (r != Relation::greater) {
            c.level = k;
            c.boundary = r == Relation::equal;
            return c;
        }
    }
    throw NumericError("base lies beyond the supported level range");
}

std::optional<Base> base_from_characteristic(const DigitSequence& d, const mpq_class& lo, const mpq_class& hi) {
    std::size_t a = d.preperiod.size(), p = d.period.size();
    if (a + p + 1 > 96) return std::nullopt;
    // (1 - X)[A(X)(X^p - 1) + P(X)] - X^(a+1)(X^p - 1), from f_beta(d) = l_beta.
    QPoly A(a + 1, mpq_class(0)), P(p + 1, mpq_class(0));
    for (std::size_t k = 1; k <= a; ++k) A[a - k] = d.preperiod[k - 1];
    for (std::size_t k = 1; k <= p; ++k) P[p - k] = d.period[k - 1];
    QPoly xp1(p + 1, mpq_class(0));
    xp1[0] = -1;
    xp1[p] = 1;
    QPoly inner = poly_mul(A, xp1);
    inner.resize(std::max(inner.size(), P.size()), mpq_class(0));
    for (std::size_t i = 0; i < P.size(); ++i) inner[i] += P[i];
    QPoly left = poly_mul(QPoly{mpq_class(1), mpq_class(-1)}, inner);
    QPoly shift(a + 2, mpq_class(0));
    shift[a + 1] = 1;
    QPoly right = poly_mul(shift, xp1);
    QPoly q = poly_sub(left, right);
    trim(q);
    QPoly g = poly_gcd(q, derivative(q));
    if (g.size() > 1) {
        QPoly quo, rem;
        poly_divmod(q, g, quo, rem);
        q = quo;
    }
    trim(q);
    // Drop cyclotomic and monomial factors introduced by the construction.
    auto divide_out = [&](const QPoly& m) {
        QPoly g2 = poly_gcd(q, m);
        if (g2.size() > 1) {
            QPoly quo, rem;
            poly_divmod(q, g2, quo, rem);
            q = quo;
            trim(q);
        }
    };
    divide_out(QPoly{mpq_class(0), mpq_class(1)});
    for (std::size_t m = 1; m <= 2 * q.size() + 2 && q.size() > 2; ++m) {
        QPoly xm(m + 1, mpq_class(0));
        xm[0] = -1;
        xm[m] = 1;
        divide_out(xm);
    }
    mpz_class den = 1;
    for (auto& c : q) den = lcm(den, c.get_den());
    std::vector<mpz_class> coeffs;
    for (auto& c : q) {
        mpq_class v = c * den;
        coeffs.push_back(v.get_num());
    }
    // Prefer the shortest decimal bracket that still isolates the root.
    mpz_class scale = 1;
    for (int k = 1; k <= 40; ++k) {
        scale *= 10;
        mpq_class a, b;
        mpz_class fl, cl;
        mpz_fdiv_q(fl.get_mpz_t(), mpq_class(lo * scale).get_num_mpz_t(), mpq_class(lo * scale).get_den_mpz_t());
        mpz_cdiv_q(cl.get_mpz_t(), mpq_class(hi * scale).get_num_mpz_t(), mpq_class(hi * scale).get_den_mpz_t());
        a = mpq_class(fl, scale);
        b = mpq_class(cl, scale);
        a.canonicalize();
        b.canonicalize();
        try {
            Base base = Base::algebraic(coeffs, a, b);
            SequenceResult s = characteristic_sequence(base, SeqMode::corrected, 1);
            if (s.periodic && s.seq == d) return base;
            return std::nullopt;
        } catch (const InputError&) {
        } catch (const NumericError&) {
            return std::nullopt;
        }
    }
    return std::nullopt;
}

namespace {

using Target = std::function<std::optional<int>(std::size_t)>; // digit k (1-based) or none past the known prefix

struct Verdict {
    Relation relation;
    std::size_t matched;
};

Verdict compare_to_target(const mpq_class& y, const Target& target, std::size_t cap) {
    Base yb = Base::approximate(y, kDefaultPrecision);
    DigitStream ds(yb, [](const Field& F) { return endpoints(F).l; });
    for (std::size_t k = 1; k <= cap; ++k) {
        std::optional<int> t = target(k);
        if (!t) return {Relation::equal, k - 1};
        int a = ds.next();
        if (a != *t) {
            bool odd = k % 2 == 1;
            bool less = odd ? a > *t : a < *t;
            return {less ? Relation::less : Relation::greater, k - 1};
        }
    }
    return {Relation::equal, cap};
}

ExchangeResult bisect(const Target& target, mpq_class lo, mpq_class hi, const ExchangeOptions& opt) {
    ExchangeResult res;
    mpq_class tol(opt.tol);
    mpq_class mid = (lo + hi) / 2;
    Verdict v{Relation::equal, 0};
    int it = 0;
    for (; it < opt.iteration_cap; ++it) {
        mid = (lo + hi) / 2;
        try {
            v = compare_to_target(mid, target, opt.compare_cap);
        } catch (const BoundaryAmbiguous&) {
            // Exact boundary hit of a rational candidate; nudge inside the bracket.
            mid += (hi - lo) / 1024;
            v = compare_to_target(mid, target, opt.compare_cap);
        }
        if (v.relation == Relation::equal) {
            lo = hi = mid;
            break;
        }
        // d increases with beta in the alternating order.
        if (v.relation == Relation::greater) hi = mid;
        else lo = mid;
        if (hi - lo < tol && v.matched >= opt.digit_horizon) break;
    }
    if (it == opt.iteration_cap && hi - lo >= tol) throw NoConvergence("bisection did not reach the tolerance");
    res.lo = lo;
    res.hi = hi;
    res.iterations = it;
    res.digits_matched = v.matched;
    mpq_class centre = (lo + hi) / 2;
    res.base = Base::approximate(centre, kDefaultPrecision);
    return res;
}

mpq_class to_q(double v) { return mpq_class(v); }

} // namespace

ExchangeResult upsilon_inverse(const Base& x, int n, const ExchangeOptions& opt) {
    if (n < 0) throw InputError("invalid level: n must be >= 0");
    Classification cx = classify_interval(x);
    if (!cx.coded) throw InputError("upsilon_inverse needs x <= -gamma_0");
    SequenceResult dx = characteristic_sequence(x, SeqMode::corrected, opt.digit_horizon + 64);
    std::optional<DigitSequence> t_seq;
    Word t_word;
    if (dx.periodic) t_seq = phi_apply(dx.seq, n + 1);
    else t_word = phi_apply(dx.prefix, n + 1);
    Target target = [&](std::size_t k) -> std::optional<int> {
        if (t_seq) return t_seq->at(k);
        if (k <= t_word.size()) return t_word[k - 1];
        return std::nullopt;
    };
    GammaBound gn = gamma_bound(n), gn1 = gamma_bound(n + 1);
    mpq_class lo = -to_q(gn.value) - mpq_class(1, 1000000);
    mpq_class hi = -to_q(gn1.value) + mpq_class(1, 1000000);
    ExchangeResult res = bisect(target, lo, hi, opt);
    res.level = n;
    res.target_prefix = t_seq ? t_seq->prefix(opt.digit_horizon) : Word(t_word.begin(), t_word.begin() + static_cast<long>(std::min(t_word.size(), opt.digit_horizon)));
    if (opt.recognize && t_seq) {
        mpq_class w = res.hi - res.lo;
        if (w == 0) w = mpq_class(1, 1000000000);
        if (auto b = base_from_characteristic(*t_seq, res.lo - w, res.hi + w)) {
            res.base = *b;
            res.exact = true;
        }
    }
    return res;
}

ExchangeResult upsilon(const Base& beta, const ExchangeOptions& opt) {
    Classification c = classify_interval(beta);
    if (c.coded) throw InputError("beta <= -gamma_0 is already in the coded range");
    int n = c.level;
    std::optional<DigitSequence> s_seq;
    Word s_word;
    SequenceResult d = characteristic_sequence(beta, SeqMode::corrected, 1);
    if (d.periodic) {
        s_seq = phi_decode(d.seq, n + 1);
    } else {
        std::size_t want = std::max<std::size_t>(opt.digit_horizon, 128);
        std::size_t len = want * u_block(n + 1).size() + 16;
        SequenceResult dp = characteristic_sequence(beta, SeqMode::corrected, len);
        s_word = phi_decode(dp.prefix, n + 1, false);
        if (s_word.empty()) throw NotInImage("characteristic prefix does not decode");
    }
    Target target = [&](std::size_t k) -> std::optional<int> {
        if (s_seq) return s_seq->at(k);
        if (k <= s_word.size()) return s_word[k - 1];
        return std::nullopt;
    };
    int s1 = *target(1);
    GammaBound g0 = gamma_bound(0);
    mpq_class lo = -(s1 + 2);
    mpq_class hi = -to_q(g0.value) + mpq_class(1, 1000000);
    ExchangeResult res = bisect(target, lo, hi, opt);
    res.level = n;
    res.target_prefix = s_seq ? s_seq->prefix(opt.digit_horizon) : Word(s_word.begin(), s_word.begin() + static_cast<long>(std::min(s_word.size(), opt.digit_horizon)));
    if (opt.recognize && s_seq) {
        mpq_class w = res.hi - res.lo;
        if (w == 0) w = mpq_class(1, 1000000000);
        if (auto b = base_from_characteristic(*s_seq, res.lo - w, res.hi + w)) {
            res.base = *b;
            res.exact = true;
        }
    }
    return res;
}

FieldElement t_threshold(const Field& F, int n) {
    FieldElement prod = F.from_int(1);
    for (int k = -1; k <= n - 1; ++k) {
        long l = static_cast<long>(u_block(k).size());
        prod = F.mul(prod, F.add_int(F.pow_beta(-l), 1));
    }
    FieldElement b = F.beta();
    return F.sub(prod, F.mul(b, F.inv(F.add_int(b, -1))));
}

FieldElement t_threshold_uncorrected(const Field& F, int n) {
    FieldElement prod = F.from_int(1);
    for (int k = -1; k <= n - 1; ++k) {
        long l = static_cast<long>(u_block(k).size());
        prod = F.mul(prod, F.add_int(F.pow_beta(-l), 1));
    }
    long L = static_cast<long>(u_block(n).size());
    FieldElement num = F.add_int(F.pow_beta(L), -2);
    FieldElement den = F.mul(F.pow_beta(L - 1), F.add_int(F.beta(), -1));
    return F.sub(prod, F.mul(num, F.inv(den)));
}

FieldElement t_from_digits(const Field& F, int n, std::size_t horizon) {
    Word u = u_block(n);
    const Base& b = F.base();
    if (b.exact()) {
        SequenceResult d = characteristic_sequence(b, SeqMode::corrected, 1);
        if (d.periodic) return evaluate_f_beta(F, DigitSequence::make(concat(u, d.seq.preperiod), d.seq.period));
    }
    if (horizon == 0) horizon = static_cast<std::size_t>(std::ceil(80.0 / std::log2(std::fabs(b.approx())))) + 8;
    SequenceResult d = characteristic_sequence(b, SeqMode::corrected, horizon);
    return evaluate_f_beta(F, concat(u, d.prefix));
}

} // namespace negbeta
