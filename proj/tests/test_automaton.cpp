#include "negbeta/automaton.hpp"
#include "negbeta/numeration.hpp"
#include "negbeta/ordering.hpp"

#include "sample_bases.hpp"

#include <doctest.h>

#include <cmath>

using namespace negbeta;
using namespace negbeta::samples;

namespace {

const char* const kExact[] = {kMinus2, kMinus3, kGolden, kGamma1, kLevel0, kLevel1, kEx1, kEx2};

} // namespace

TEST_SUITE("automaton") {

TEST_CASE("property: paths from the initial state are the admissible words") {
    for (const char* desc : kExact) {
        Shift shift = Shift::from_base(Base::parse(desc));
        SupportAutomaton a = SupportAutomaton::build(shift.lower());
        const std::size_t n = shift.top_digit() >= 2 ? 6 : 10;
        Language lang = brute_force_language(shift, n);
        std::size_t accepted = 0;
        // Every word over the alphabet of length n.
        Word w(n, 0);
        const int base = shift.top_digit() + 1;
        for (;;) {
            bool acc = a.accepts(w);
            CHECK(acc == is_admissible(w, shift).admissible);
            accepted += acc ? 1 : 0;
            std::size_t i = 0;
            while (i < n && ++w[i] == base) w[i++] = 0;
            if (i == n) break;
        }
        INFO(std::string(desc));
        CHECK(accepted == lang.counts[n]);
    }
}

TEST_CASE("spectral radius equals |beta|") {
    for (const char* desc : kExact) {
        Base b = Base::parse(desc);
        SupportAutomaton a = SupportAutomaton::build(Shift::from_base(b).lower());
        INFO(std::string(desc));
        CHECK(a.spectral_radius() == doctest::Approx(std::fabs(b.approx())).epsilon(1e-9));
        CHECK(static_cast<double>(a.minimal().radius) == doctest::Approx(std::fabs(b.approx())).epsilon(1e-9));
    }
}

TEST_CASE("golden support") {
    SupportAutomaton a = SupportAutomaton::build(Shift::from_base(Base::parse(kGolden)).lower());
    CHECK(a.minimal().size() == 2);
    CHECK(a.accepts_factor(Word{1, 0, 0}));
    CHECK(a.accepts_factor(Word{1, 1, 1}));
    CHECK_FALSE(a.accepts_factor(Word{1, 0, 1}));
    const double phi = (1 + std::sqrt(5.0)) / 2;
    CHECK(static_cast<double>(a.minimal().cylinder(Word{1})) == doctest::Approx(phi / (phi + 2)).epsilon(1e-9));
    CHECK(a.dot().find("digraph") != std::string::npos);
}

TEST_CASE("level-1 support excludes the intransitive part") {
    SupportAutomaton a = SupportAutomaton::build(Shift::from_base(Base::parse(kLevel1)).lower());
    CHECK(a.accepts(Word{0, 1, 1, 0, 0}));
    CHECK_FALSE(a.accepts_factor(Word{0, 1, 1, 0, 0}));
    CHECK(a.minimal().cylinder(Word{0, 1, 1, 0, 0}) == 0);
}

TEST_CASE("property: cylinder measures are shift invariant and additive") {
    for (const char* desc : kExact) {
        SupportAutomaton a = SupportAutomaton::build(Shift::from_base(Base::parse(desc)).lower());
        const auto& m = a.minimal();
        const int k = a.alphabet();
        long double total = 0;
        for (int x = 0; x < k; ++x) total += m.cylinder(Word{x});
        CHECK(static_cast<double>(total) == doctest::Approx(1.0).epsilon(1e-12));
        for (const Word& w : {Word{0}, Word{1}, Word{1, 0}, Word{0, 0, 1}, Word{1, 0, 0, 1}}) {
            long double right = 0, left = 0;
            for (int x = 0; x < k; ++x) {
                right += m.cylinder(concat(w, {x}));
                left += m.cylinder(concat({x}, w));
            }
            INFO(std::string(desc), " ", format_word(w));
            CHECK(static_cast<double>(right) == doctest::Approx(static_cast<double>(m.cylinder(w))).epsilon(1e-12));
            CHECK(static_cast<double>(left) == doctest::Approx(static_cast<double>(m.cylinder(w))).epsilon(1e-12));
        }
    }
}

}
