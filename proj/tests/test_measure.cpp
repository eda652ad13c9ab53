#include "negbeta/automaton.hpp"
#include "negbeta/errors.hpp"
#include "negbeta/measure.hpp"
#include "negbeta/ordering.hpp"

#include "sample_bases.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

using namespace negbeta;
using namespace negbeta::samples;

namespace {

CylinderMeasure measure(const Base& b, const SupportCode& s, const Word& w, long offset = 0) {
    return cylinder_measure(CylinderQuery{w, offset}, s, b);
}

} // namespace

TEST_SUITE("measure") {

TEST_CASE("support code selection") {
    SupportCode golden = support_code(Base::parse(kGolden));
    CHECK(golden.label == "{1,00}");
    CHECK(golden.kraft_ok);
    SupportCode two = support_code(Base::parse(kMinus2));
    CHECK(two.label == "C_beta");
    CHECK(two.kraft_ok);
    SupportCode g1 = support_code(Base::parse(kGamma1));
    CHECK(g1.label == "Delta_1");
    CHECK(g1.kraft_ok);
    CHECK(g1.candidates.size() == 2);
    CHECK(support_code(Base::parse(kLevel0)).label == "Delta_0");
    CHECK(support_code(Base::parse(kLevel1)).label == "Delta_1");
}

TEST_CASE("golden cylinders") {
    Base b = Base::parse(kGolden);
    SupportCode s = support_code(b);
    CylinderMeasure one = measure(b, s, Word{1});
    CHECK(one.in_code);
    CHECK(one.value == doctest::Approx(0.447214).epsilon(1e-6));
    CylinderMeasure zero = measure(b, s, Word{0});
    CHECK_FALSE(zero.in_code);
    CHECK(zero.value == doctest::Approx(0.552786).epsilon(1e-6));
    CHECK(zero.value == doctest::Approx(zero.automaton_value).epsilon(1e-9));
    CHECK(measure(b, s, Word{1, 0, 0}).value == doctest::Approx(0.17082).epsilon(1e-5));
    CylinderMeasure pair = measure(b, s, Word{0, 0});
    CHECK(pair.in_code);
    CHECK(pair.value == doctest::Approx(0.276393).epsilon(1e-6));
    CHECK(pair.automaton_value == doctest::Approx(0.381966).epsilon(1e-6));
    CHECK_THROWS_AS(measure(b, s, Word{1, 0, 1}), InputError);
}

TEST_CASE("property: cylinder values, normalization and shift invariance") {
    for (const char* desc : {kMinus2, kGolden, kGamma1, kEx1}) {
        Base b = Base::parse(desc);
        SupportCode s = support_code(b);
        REQUIRE(s.kraft_ok);
        Shift shift = Shift::from_base(b);
        const int k = shift.top_digit() + 1;
        INFO(std::string(desc));
        double total = 0;
        Word w(3, 0);
        for (;;) {
            if (!is_admissible(w, shift).admissible) {
                CHECK_THROWS_AS(measure(b, s, w), InputError);
            } else {
                CylinderMeasure m = measure(b, s, w);
                total += m.automaton_value;
                if (!m.in_code) CHECK(std::fabs(m.value - m.automaton_value) <= m.error + 1e-6);
                for (long off : {1L, 5L, 17L})
                    CHECK(measure(b, s, w, off).value == doctest::Approx(m.value).epsilon(1e-12));
            }
            std::size_t i = 0;
            while (i < w.size() && ++w[i] == k) w[i++] = 0;
            if (i == w.size()) break;
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("property: code word masses weighted by length sum to one") {
    for (const char* desc : {kGolden, kGamma1, kLevel0, kLevel1}) {
        Base b = Base::parse(desc);
        SupportCode s = support_code(b);
        REQUIRE(s.code.listed);
        double sum = 0;
        for (const Word& x : s.code.words) sum += static_cast<double>(x.size()) * measure(b, s, x).value;
        const double eps = s.stats.average_length.tail / s.stats.average_length.value();
        INFO(std::string(desc));
        CHECK(sum >= 1 - eps - 1e-9);
        CHECK(sum <= 1 + 1e-9);
    }
}

TEST_CASE("level-1 support code converges slowly") {
    Base b = Base::parse(kLevel1);
    SupportCode s40 = support_code(b, 40);
    CHECK(s40.label == "Delta_1");
    CHECK_FALSE(s40.stats.kraft.tail_valid);
    SupportCode s100 = support_code(b, 100);
    CHECK(s100.stats.kraft.truncated > 0.999);
    CHECK(s100.stats.kraft.truncated < 1);
}

TEST_CASE("property: code words of equal length have equal mass") {
    Base b = Base::parse(kGamma1);
    SupportCode s = support_code(b, 24);
    for (const Word& w : s.code.words) {
        CylinderMeasure m = measure(b, s, w);
        CHECK(m.in_code);
        CHECK(m.method == "code");
        const double expected = std::pow(s.abs_beta, -static_cast<double>(w.size())) / s.stats.average_length.value();
        CHECK(m.value == doctest::Approx(expected).epsilon(1e-9));
    }
}

TEST_CASE("intransitive patterns") {
    std::set<std::string> l1;
    for (const PatternMatch& p : intransitive_patterns(1, 1)) l1.insert(format_word(p.pattern));
    CHECK(l1 == std::set<std::string>{"01100", "0000", "1111", "00111100", "11111100"});
    std::set<std::string> l0;
    for (const PatternMatch& p : intransitive_patterns(0, 1)) l0.insert(format_word(p.pattern));
    CHECK(l0 == std::set<std::string>{"0000", "000001"});

    Base b = Base::parse(kLevel1);
    IntransitiveResult r = is_intransitive(Word{1, 0, 1, 1, 0, 0, 1}, b);
    CHECK(r.intransitive);
    REQUIRE(r.match.has_value());
    CHECK(r.match->pattern == Word{0, 1, 1, 0, 0});
    CHECK(r.match->position == 1);
    CHECK(r.level == 1);
    IntransitiveResult ok = is_intransitive(Word{1, 0, 0, 1}, b);
    CHECK_FALSE(ok.intransitive);
    CHECK(ok.automaton_factor == true);

    IntransitiveResult aperiodic = is_intransitive(Word{1, 1, 1, 1}, Base::parse("beta=-1.2"));
    CHECK_FALSE(aperiodic.automaton_factor.has_value());
}

TEST_CASE("property: pattern matches are never support factors") {
    std::mt19937_64 rng(17);
    for (const char* desc : {kLevel0, kLevel1}) {
        Base b = Base::parse(desc);
        SupportAutomaton a = SupportAutomaton::build(Shift::from_base(b).lower());
        std::uniform_int_distribution<int> bit(0, 1);
        for (int t = 0; t < 500; ++t) {
            Word w(10);
            for (int& x : w) x = bit(rng);
            IntransitiveResult r = is_intransitive(w, b);
            REQUIRE(r.automaton_factor.has_value());
            CHECK(*r.automaton_factor == a.accepts_factor(w));
            CHECK(r.intransitive == !a.accepts_factor(w));
            if (r.match) CHECK_FALSE(a.accepts_factor(w));
        }
    }
}

TEST_CASE("small simulations") {
    Base b = Base::parse(kGolden);
    SimulationReport empty = orbit_simulate(b, 100000, 1, {});
    CHECK(empty.steps == 100000);
    CHECK(empty.queries.empty());
    CHECK(empty.generator == "mt19937_64");

    SimulationReport rep = orbit_simulate(b, 200000, 2, {CylinderQuery{{1}, 0}, CylinderQuery{{0, 0}, 0}});
    REQUIRE(rep.queries.size() == 2);
    for (const QueryFrequency& q : rep.queries) {
        CHECK(std::fabs(q.empirical - q.analytic) < 5 * std::max(q.stderr_batch, q.stderr_binomial));
    }

    SimulationReport l1 = orbit_simulate(Base::parse(kLevel1), 200000, 3, {CylinderQuery{{0, 1, 1, 0, 0}, 0}});
    CHECK(l1.queries[0].hits == 0);
    CHECK(l1.queries[0].analytic == 0);
    CHECK(l1.level == 1);
    // The finite union with k <= l(u_1) misses part of the support here.
    CHECK(l1.support_fraction < 0.95);
    CHECK(l1.closed_fraction > 0.999);

    SimulationReport par = orbit_simulate_parallel(b, 200000, 4, {CylinderQuery{{1}, 0}}, 2);
    CHECK(par.steps == 200000);
    CHECK(par.queries[0].empirical == doctest::Approx(par.queries[0].analytic).epsilon(0.02));
}

}
