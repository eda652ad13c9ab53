#include "negbeta/ordering.hpp"

#include "negbeta/errors.hpp"
#include "negbeta/numeration.hpp"

#include <algorithm>
#include <cmath>

namespace negbeta {

const char* relation_name(Relation r) {
    switch (r) {
    case Relation::less: return "less";
    case Relation::equal: return "equal";
    case Relation::greater: return "greater";
    }
    return "?";
}

namespace {

Relation at_difference(int a, int b, std::size_t k, int delta) {
    long sgn = (delta < 0 && k % 2 == 1) ? -1 : 1;
    return sgn * (a - b) < 0 ? Relation::less : Relation::greater;
}

} // namespace

OrderResult alt_compare(const Word& x, const Word& y, int delta, bool strict) {
    std::size_t n = std::min(x.size(), y.size());
    for (std::size_t i = 0; i < n; ++i)
        if (x[i] != y[i]) return {at_difference(x[i], y[i], i + 1, delta), i + 1};
    if (strict && x.size() != y.size()) throw IncomparablePrefix("one word is a proper prefix of the other");
    return {};
}

OrderResult alt_compare(const DigitSequence& x, const DigitSequence& y, int delta) {
    std::size_t pre = std::max(x.preperiod.size(), y.preperiod.size());
    std::size_t span = pre + x.period.size() * y.period.size() + 1;
    for (std::size_t k = 1; k <= span; ++k) {
        int a = x.at(k), b = y.at(k);
        if (a != b) return {at_difference(a, b, k, delta), k};
    }
    return {};
}

Shift Shift::from_base(const Base& base, std::size_t state_cap) {
    SequenceResult d = characteristic_sequence(base, SeqMode::corrected, 1, state_cap);
    SequenceResult r = upper_sequence(base, SeqMode::corrected, 1, state_cap);
    if (!d.periodic || !r.periodic)
        throw NotEventuallyPeriodic("characteristic sequence has no detected period");
    Shift s;
    s.d_ = d.seq;
    s.r_ = r.seq;
    s.delta_ = base.sign();
    return s;
}

Shift Shift::from_lower(const DigitSequence& d) {
    Shift s;
    s.d_ = d;
    s.r_ = DigitSequence::make(concat({0}, d.preperiod), d.period);
    s.delta_ = -1;
    return s;
}

AdmissibilityReport is_admissible(const Word& x, const Word& d_prefix, const Word& r_prefix, int delta) {
    if (d_prefix.size() < x.size() || r_prefix.size() < x.size())
        throw InputError("bound prefixes are shorter than the word");
    for (std::size_t m = 0; m < x.size(); ++m) {
        std::size_t len = x.size() - m;
        for (std::size_t i = 0; i < len; ++i) {
            if (x[m + i] != d_prefix[i]) {
                if (at_difference(x[m + i], d_prefix[i], i + 1, delta) == Relation::less)
                    return {false, static_cast<long>(m), Bound::lower};
                break;
            }
        }
        for (std::size_t i = 0; i < len; ++i) {
            if (x[m + i] != r_prefix[i]) {
                if (at_difference(x[m + i], r_prefix[i], i + 1, delta) == Relation::greater)
                    return {false, static_cast<long>(m), Bound::upper};
                break;
            }
        }
    }
    return {};
}

AdmissibilityReport is_admissible(const Word& x, const Shift& shift) {
    return is_admissible(x, shift.lower().prefix(x.size()), shift.upper().prefix(x.size()), shift.delta());
}

AdmissibilityReport is_admissible(const DigitSequence& x, const Shift& shift) {
    // Suffixes beyond the preperiod repeat, so one period of offsets suffices;
    // each comparison is decided within pre + period products of digits.
    std::size_t offsets = x.preperiod.size() + x.period.size();
    for (std::size_t m = 0; m < offsets; ++m) {
        DigitSequence s = x.shifted(m);
        if (alt_compare(s, shift.lower(), shift.delta()).relation == Relation::less)
            return {false, static_cast<long>(m), Bound::lower};
        if (alt_compare(s, shift.upper(), shift.delta()).relation == Relation::greater)
            return {false, static_cast<long>(m), Bound::upper};
    }
    return {};
}

std::vector<mpz_class> count_words(const Word& d, std::size_t n_max) {
    if (d.size() < n_max) throw InputError("characteristic prefix shorter than n_max");
    auto dk = [&](std::size_t k) { return k == 0 ? 0 : d[k - 1]; };
    std::vector<mpz_class> h{1};
    for (std::size_t n = 1; n <= n_max; ++n) {
        mpz_class s = 1;
        for (std::size_t k = 1; k <= n; ++k) {
            long coef = static_cast<long>(dk(k - 1)) - dk(k);
            if (k % 2 == 1) coef = -coef;
            s += coef * h[n - k];
        }
        h.push_back(s);
    }
    return h;
}

std::vector<mpz_class> count_words(const DigitSequence& d, std::size_t n_max) {
    return count_words(d.prefix(n_max), n_max);
}

Language brute_force_language(const Shift& shift, std::size_t n_max, std::size_t cap) {
    std::size_t alphabet = static_cast<std::size_t>(shift.top_digit()) + 1;
    double total = 0;
    for (std::size_t n = 0; n <= n_max; ++n) total += std::pow(static_cast<double>(alphabet), static_cast<double>(n));
    if (total > static_cast<double>(cap)) throw BudgetExceeded("brute-force enumeration exceeds the word budget");
    Word dp = shift.lower().prefix(n_max), rp = shift.upper().prefix(n_max);
    Language lang;
    lang.words.resize(n_max + 1);
    lang.words[0].push_back({});
    // Admissible words are factor-closed, so extending admissible words suffices.
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (const Word& w : lang.words[n - 1]) {
            for (std::size_t a = 0; a < alphabet; ++a) {
                Word x = w;
                x.push_back(static_cast<int>(a));
                if (is_admissible(x, dp, rp, shift.delta()).admissible) lang.words[n].push_back(std::move(x));
            }
        }
    }
    for (auto& v : lang.words) lang.counts.push_back(v.size());
    return lang;
}

} // namespace negbeta
