#pragma once
#include "negbeta/base.hpp"
#include "negbeta/word.hpp"

#include <gmpxx.h>

#include <vector>

namespace negbeta {

enum class Relation { less, equal, greater };
const char* relation_name(Relation r);

struct OrderResult {
    Relation relation = Relation::equal;
    std::size_t witness = 0; // first differing index, 1-based; 0 when equal
};

// Alternating order: x < y iff delta^k (x_k - y_k) < 0 at the first difference.
// Finite words are compared up to the shorter length; with strict set, a
// proper prefix relation raises IncomparablePrefix.
OrderResult alt_compare(const Word& x, const Word& y, int delta, bool strict = false);
OrderResult alt_compare(const DigitSequence& x, const DigitSequence& y, int delta);

enum class Bound { none, lower, upper };

struct AdmissibilityReport {
    bool admissible = true;
    long violating_suffix = -1; // 0-based offset of the offending suffix
    Bound violated = Bound::none;
};

// Lower and upper bound sequences of a shift together with the sign of beta.
class Shift {
public:
    static Shift from_base(const Base& base, std::size_t state_cap = 1000000);
    // Negative shift with the given corrected lower sequence; the upper bound is 0.d.
    static Shift from_lower(const DigitSequence& d);

    const DigitSequence& lower() const { return d_; }
    const DigitSequence& upper() const { return r_; }
    int delta() const { return delta_; }
    int top_digit() const { return d_.at(1) > r_.at(1) ? d_.at(1) : r_.at(1); }

private:
    DigitSequence d_, r_;
    int delta_ = -1;
};

// Every suffix of x lies between the prefixes of d and r (prefix convention).
AdmissibilityReport is_admissible(const Word& x, const Word& d_prefix, const Word& r_prefix, int delta);
AdmissibilityReport is_admissible(const Word& x, const Shift& shift);
AdmissibilityReport is_admissible(const DigitSequence& x, const Shift& shift);

// H_0..H_n by H_n = sum_k (-1)^k (d_(k-1) - d_k) H_(n-k) + 1 with d_0 = 0.
std::vector<mpz_class> count_words(const DigitSequence& d, std::size_t n_max);
std::vector<mpz_class> count_words(const Word& d_prefix, std::size_t n_max);

struct Language {
    std::vector<std::vector<Word>> words; // words[n] sorted lexicographically
    std::vector<std::size_t> counts;
};

inline constexpr std::size_t kBruteForceCap = 50000000;

// Exhaustive filter of all words over {0..top} up to n_max.
Language brute_force_language(const Shift& shift, std::size_t n_max, std::size_t cap = kBruteForceCap);

} // namespace negbeta
