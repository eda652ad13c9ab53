#include "negbeta/codes.hpp"
#include "negbeta/errors.hpp"
#include "negbeta/numeration.hpp"
#include "negbeta/ordering.hpp"

#include "sample_bases.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace negbeta;
using namespace negbeta::samples;

namespace {

Word random_word(std::mt19937_64& rng, std::size_t n, int top) {
    std::uniform_int_distribution<int> digit(0, top);
    Word w(n);
    for (int& a : w) a = digit(rng);
    return w;
}

} // namespace

TEST_SUITE("ordering") {

TEST_CASE("alternating order examples") {
    CHECK(alt_compare(Word{1}, Word{0}, -1).relation == Relation::less);
    CHECK(alt_compare(Word{0, 1}, Word{0, 0}, -1).relation == Relation::greater);
    CHECK(alt_compare(Word{1}, Word{0}, 1).relation == Relation::greater);
    OrderResult r = alt_compare(Word{2, 0, 1}, Word{2, 0, 2}, -1);
    CHECK(r.relation == Relation::greater);
    CHECK(r.witness == 3);
    OrderResult e = alt_compare(Word{1, 2}, Word{1, 2}, -1);
    CHECK(e.relation == Relation::equal);
    CHECK(e.witness == 0);
    CHECK(alt_compare(Word{1, 2}, Word{1, 2, 0}, -1).relation == Relation::equal);
    CHECK_THROWS_AS(alt_compare(Word{1, 2}, Word{1, 2, 0}, -1, true), IncomparablePrefix);
    CHECK(std::string(relation_name(Relation::less)) == "less");
}

TEST_CASE("sequences compare beyond their stored digits") {
    DigitSequence a = DigitSequence::make({}, {1, 0});
    DigitSequence b = DigitSequence::make({1, 0, 1, 0, 1}, {1});
    OrderResult r = alt_compare(a, b, -1);
    CHECK(r.relation == Relation::less);
    CHECK(r.witness == 6);
    CHECK(alt_compare(a, DigitSequence::make({1, 0, 1}, {0, 1}), -1).relation == Relation::equal);
}

TEST_CASE("property: the alternating order is a total order") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 2000; ++t) {
        Word x = random_word(rng, 6, 2), y = random_word(rng, 6, 2), z = random_word(rng, 6, 2);
        Relation xy = alt_compare(x, y, -1).relation;
        Relation yx = alt_compare(y, x, -1).relation;
        CHECK((xy == Relation::equal) == (x == y));
        if (xy == Relation::less) CHECK(yx == Relation::greater);
        if (xy == Relation::less && alt_compare(y, z, -1).relation == Relation::less)
            CHECK(alt_compare(x, z, -1).relation == Relation::less);
    }
}

TEST_CASE("property: the order matches the values of expansions") {
    Base b = Base::parse(kMinus2);
    Field F(b);
    std::mt19937_64 rng(5);
    Shift shift = Shift::from_base(b);
    int checked = 0;
    while (checked < 300) {
        Word x = random_word(rng, 12, 1), y = random_word(rng, 12, 1);
        if (!is_admissible(x, shift).admissible || !is_admissible(y, shift).admissible) continue;
        Relation rel = alt_compare(x, y, -1).relation;
        int s = F.compare(evaluate_f_beta(F, x), evaluate_f_beta(F, y));
        if (rel == Relation::less) CHECK(s <= 0);
        if (rel == Relation::greater) CHECK(s >= 0);
        ++checked;
    }
}

TEST_CASE("admissibility") {
    Shift golden = Shift::from_base(Base::parse(kGolden));
    CHECK(golden.lower().str() == "1(0)");
    CHECK(golden.upper().str() == "01(0)");
    CHECK(is_admissible(Word{1, 0, 0}, golden).admissible);
    AdmissibilityReport bad = is_admissible(Word{1, 0, 1}, golden);
    CHECK_FALSE(bad.admissible);
    CHECK(bad.violated != Bound::none);
    CHECK(bad.violating_suffix >= 0);

    Shift ex1 = Shift::from_base(Base::parse(kEx1));
    CHECK(is_admissible(Word{2, 0, 1, 2, 1, 2, 1, 2}, ex1).admissible);
    CHECK_FALSE(is_admissible(Word{2, 0, 2}, ex1).admissible);
    CHECK(is_admissible(Word{0, 2, 0, 1}, ex1).admissible);

    Shift two = Shift::from_base(Base::parse(kMinus2));
    CHECK(is_admissible(DigitSequence::make({}, {1, 0}), two).admissible);
    CHECK(is_admissible(DigitSequence::make({}, {1}), two).admissible);
}

TEST_CASE("word counts") {
    DigitSequence golden = Shift::from_base(Base::parse(kGolden)).lower();
    std::vector<mpz_class> h = count_words(golden, 6);
    CHECK(h[0] == 1);
    CHECK(h[1] == 2);
    CHECK(h[2] == 4);
    CHECK(h[3] == 7);
    std::vector<mpz_class> two = count_words(DigitSequence::make({}, {1, 0}), 10);
    for (std::size_t n = 0; n <= 10; ++n) CHECK(two[n] == mpz_class(1) << static_cast<unsigned>(n));
}

TEST_CASE("golden words of length three") {
    Shift golden = Shift::from_base(Base::parse(kGolden));
    Language lang = brute_force_language(golden, 3);
    std::vector<std::string> got;
    for (const Word& w : lang.words[3]) got.push_back(format_word(w));
    CHECK(got == std::vector<std::string>{"000", "001", "010", "011", "100", "110", "111"});
}

TEST_CASE("property: recurrence, automaton count and brute force agree") {
    for (const char* desc : {kMinus2, kMinus3, kGolden, kGamma1, kLevel0, kLevel1, kEx1, kEx2}) {
        Shift shift = Shift::from_base(Base::parse(desc));
        const std::size_t n = shift.top_digit() >= 2 ? 7 : 12;
        std::vector<mpz_class> rec = count_words(shift.lower(), n);
        std::vector<mpz_class> dp = count_words_dp(shift.lower(), n);
        Language lang = brute_force_language(shift, n);
        for (std::size_t k = 0; k <= n; ++k) {
            INFO(std::string(desc), " n=", k);
            CHECK(rec[k] == dp[k]);
            CHECK(rec[k] == lang.counts[k]);
        }
    }
}

TEST_CASE("property: admissible words are factorial and extendable") {
    Shift shift = Shift::from_base(Base::parse(kLevel1));
    Language lang = brute_force_language(shift, 10);
    for (const Word& w : lang.words[10]) {
        Word tail(w.begin() + 1, w.end());
        Word head(w.begin(), w.end() - 1);
        CHECK(is_admissible(tail, shift).admissible);
        CHECK(is_admissible(head, shift).admissible);
    }
    for (const Word& w : lang.words[9]) {
        bool extends = false;
        for (int a = 0; a <= shift.top_digit(); ++a) extends = extends || is_admissible(concat(w, {a}), shift).admissible;
        CHECK(extends);
    }
}

}
