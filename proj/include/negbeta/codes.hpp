#pragma once
#include "negbeta/ordering.hpp"
#include "negbeta/word.hpp"

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace negbeta {

// Odd position q = 2n-1 after which a copy of d_1..d_p is inserted.
struct Block {
    std::size_t q = 0;
    std::size_t p = 0;
    int level = 0; // smallest j >= 1 with p < q_j
};

struct Decomposition {
    std::vector<Block> blocks;
    std::size_t horizon = 0;
    int max_level() const;
};

// Greedy scan of the corrected characteristic sequence; blocks with q + 1 + p <= horizon.
Decomposition decompose_characteristic(const DigitSequence& d, std::size_t horizon);

enum class FamilyKind { Gamma0, Gamma1, Delta00, E, C_beta, Delta, J };

struct FamilySpec {
    FamilyKind kind = FamilyKind::C_beta;
    int index = 0; // for Delta and J
    std::string name() const;
    static FamilySpec parse(const std::string& text);
};

struct CodeFamily {
    FamilySpec spec;
    std::size_t max_len = 0;
    std::vector<Word> words;        // sorted by length then lexicographically
    std::vector<mpz_class> counts;  // counts[n] for n <= max_len
    bool listed = true;             // false when only counts were produced
};

inline constexpr std::size_t kListCap = 2000000;

// Builds the family from its defining construction.
CodeFamily enumerate_family(const Shift& shift, FamilySpec spec, std::size_t max_len,
                            std::size_t list_cap = kListCap);

// Per-length counts of the right-extendable code by counting first returns of the
// suffix-match automaton; agrees with the constructive enumeration.
std::vector<mpz_class> count_c_beta(const DigitSequence& d, std::size_t max_len);
// First-return words listed by depth-first search on the same automaton.
std::vector<Word> first_return_words(const DigitSequence& d, std::size_t max_len, std::size_t cap = kListCap);
// H_n from the suffix-match automaton, an independent check of the recurrence.
std::vector<mpz_class> count_words_dp(const DigitSequence& d, std::size_t n_max);

// d_1..d_(n-i) < sigma^i(x) strictly for 0 <= i < n.
bool has_property_c(const Word& x, const DigitSequence& d);
bool is_prefix_code(const std::vector<Word>& words, std::pair<Word, Word>* witness = nullptr);

struct SeriesReport {
    std::vector<mpz_class> lhs, rhs;
    std::vector<bool> equal;
    bool all_equal = true;
    std::vector<std::string> factors; // families used on the right side
};

// (1+z)(1 - C(z)) prod_k (1 - Delta_k(z)) against 1 - sum (-1)^n (d_(n-1) - d_n) z^n.
SeriesReport verify_series_identity(const Shift& shift, std::size_t degree);

struct SumEstimate {
    double truncated = 0;
    double tail = 0;
    bool tail_valid = false;
    double value() const { return truncated + tail; }
};

struct CodeStatistics {
    SumEstimate kraft;
    SumEstimate average_length;
    long gcd = 0;
    std::vector<mpz_class> messages; // B_n for n <= message_len
    double max_message_ratio = 0;
};

// Sums of c_n z^n and n c_n z^n at z = 1/|beta| with a geometric tail fitted to the last five
// nonzero terms and summed on their mean length gap.
SumEstimate geometric_sum(const std::vector<long double>& terms);
CodeStatistics code_statistics(const std::vector<mpz_class>& counts, long double abs_beta,
                               std::size_t message_len = 25);

} // namespace negbeta
