#pragma once
#include <cstddef>
#include <string>
#include <vector>

namespace negbeta {

using Word = std::vector<int>;

// "2,0,1" -> {2,0,1}. Empty text gives the empty word.
Word parse_word(const std::string& text);
// Digits are concatenated when all are below 10, otherwise comma separated.
std::string format_word(const Word& w);
std::string format_word_csv(const Word& w);

Word concat(const Word& a, const Word& b);
Word repeat(const Word& w, std::size_t times);
bool is_prefix(const Word& p, const Word& w);

// Eventually periodic sequence preperiod . period^inf in canonical form:
// the period is primitive and the preperiod is as short as possible.
struct DigitSequence {
    Word preperiod;
    Word period;

    static DigitSequence make(Word pre, Word per);

    int at(std::size_t k) const; // 1-based
    Word prefix(std::size_t n) const;
    DigitSequence shifted(std::size_t n) const;
    std::size_t tail_start() const { return preperiod.size(); }
    bool purely_periodic() const { return preperiod.empty(); }
    std::string str() const;

    bool operator==(const DigitSequence& o) const {
        return preperiod == o.preperiod && period == o.period;
    }
    bool operator!=(const DigitSequence& o) const { return !(*this == o); }
};

} // namespace negbeta
