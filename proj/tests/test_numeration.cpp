#include "negbeta/errors.hpp"
#include "negbeta/numeration.hpp"

#include "sample_bases.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace negbeta;
using namespace negbeta::samples;

namespace {

mpq_class q(long a, long b = 1) {
    mpq_class r(a, b);
    r.canonicalize();
    return r;
}

bool equals_rational(const Field& F, const FieldElement& x, const mpq_class& v) {
    return F.is_zero(F.sub(x, F.from_rational(v)));
}

std::string seq(const char* desc, SeqMode mode = SeqMode::corrected) {
    SequenceResult r = characteristic_sequence(Base::parse(desc), mode, 40);
    REQUIRE(r.periodic);
    return r.seq.str();
}

} // namespace

TEST_SUITE("numeration") {

TEST_CASE("base descriptors") {
    CHECK(Base::parse("beta=-2").exact());
    CHECK_FALSE(Base::parse("beta=-1.9").exact());
    CHECK(Base::parse(kGolden).degree() == 2);
    CHECK_THROWS_AS(Base::parse("beta=-1"), InputError);
    CHECK_THROWS_AS(Base::parse("beta=0.5"), InputError);
    CHECK_THROWS_AS(Base::parse("poly=1,1;interval=0,1"), InputError);
    CHECK_THROWS_AS(Base::parse("poly=-1,1,1;interval=-3,1"), InputError);  // two roots
    CHECK_THROWS_AS(Base::parse("gamma=2"), InputError);
}

TEST_CASE("endpoints") {
    Field F2(Base::parse(kMinus2));
    Endpoints e = endpoints(F2);
    CHECK(equals_rational(F2, e.l, q(-2, 3)));
    CHECK(equals_rational(F2, e.r, q(1, 3)));
    Field F3(Base::parse(kMinus3));
    CHECK(equals_rational(F3, endpoints(F3).l, q(-3, 4)));
    CHECK(equals_rational(F3, endpoints(F3).r, q(1, 4)));
    Field G(Base::parse(kGolden));
    double l = G.to_double(endpoints(G).l);
    CHECK(l > -0.62);
    CHECK(l < -0.61);
}

TEST_CASE("single steps") {
    Field F(Base::parse(kMinus2));
    FieldElement l = endpoints(F).l;
    Step s = tbeta_step(F, F.from_rational(q(-2, 3)), l);
    CHECK(s.digit == 2);
    CHECK(equals_rational(F, s.next, q(-2, 3)));
    s = tbeta_step(F, F.from_rational(q(1, 3)), l);
    CHECK(s.digit == 0);
    CHECK(equals_rational(F, s.next, q(-2, 3)));
    for (const char* desc : {kMinus2, kGolden, kEx1, kLevel0}) {
        Field G(Base::parse(desc));
        Step z = tbeta_step(G, G.from_int(0), endpoints(G).l);
        CHECK(z.digit == 0);
        CHECK(G.is_zero(z.next));
    }
}

TEST_CASE("expansions") {
    Base b = Base::parse(kMinus2);
    Expansion e = expand(b, q(-2, 3), 4);
    CHECK(e.shift == 0);
    CHECK(e.digits == Word{2, 2, 2, 2});
    e = expand(b, q(1), 3);
    CHECK(e.shift == 1);
    CHECK(e.digits == expand(b, q(-1, 2), 3).digits);
    e = expand(b, q(5), 8);
    CHECK(e.shift == 3);
    CHECK(format_word(e.digits) == "10100000");
}

TEST_CASE("characteristic sequences") {
    CHECK(seq(kMinus2, SeqMode::raw) == "(2)");
    CHECK(seq(kMinus2) == "(10)");
    CHECK(seq(kMinus3) == "(20)");
    CHECK(seq(kGolden) == "1(0)");
    CHECK(seq(kGamma1) == "100(1)");
    CHECK(seq(kLevel0) == "(1001)");
    CHECK(seq(kLevel1) == "(10011100)");
    CHECK(seq(kEx1) == "2012121201200(21)");
    CHECK(seq(kEx2) == "2012121201200(1)");
    // The digits of l at -gamma_0 start 1,0,0,0,0.
    SequenceResult r = characteristic_sequence(Base::parse(kGolden), SeqMode::raw, 5);
    CHECK(r.prefix == Word{1, 0, 0, 0, 0});
}

TEST_CASE("approximate backend agrees with the exact backend") {
    for (const char* desc : {kGolden, kLevel0, kEx1}) {
        Base exact = Base::parse(desc);
        SequenceResult e = characteristic_sequence(exact, SeqMode::raw, 60);
        // A rational within 2^-300 of the root reproduces the first digits.
        auto [lo, hi] = exact.bracket(300);
        Base approx = Base::approximate((lo + hi) / 2, 512);
        SequenceResult a = characteristic_sequence(approx, SeqMode::raw, 60);
        CHECK(a.prefix == e.prefix);
    }
}

TEST_CASE("upper sequences") {
    SequenceResult two = upper_sequence(Base::parse("beta=2"), SeqMode::raw, 10);
    REQUIRE(two.periodic);
    CHECK(two.seq.str() == "2(0)");
    SequenceResult two_c = upper_sequence(Base::parse("beta=2"), SeqMode::corrected, 10);
    CHECK(two_c.seq.str() == "(1)");
    // For negative bases the raw upper sequence is 0 d.
    for (const char* desc : {kMinus2, kGolden, kEx1}) {
        Base b = Base::parse(desc);
        SequenceResult r = upper_sequence(b, SeqMode::raw, 30);
        SequenceResult d = characteristic_sequence(b, SeqMode::raw, 30);
        REQUIRE(r.periodic);
        INFO(std::string(desc), " r=", r.seq.str(), " d=", d.seq.str());
        CHECK(r.seq == DigitSequence::make(concat({0}, d.seq.preperiod), d.seq.period));
    }
}

TEST_CASE("f_beta of the characteristic sequence is l") {
    for (const char* desc : {kMinus2, kMinus3, kGolden, kGamma1, kLevel0, kLevel1, kEx1, kEx2}) {
        Base b = Base::parse(desc);
        Field F(b);
        SequenceResult raw = characteristic_sequence(b, SeqMode::raw, 1);
        REQUIRE(raw.periodic);
        CHECK(F.is_zero(F.sub(evaluate_f_beta(F, raw.seq), endpoints(F).l)));
        SequenceResult cor = characteristic_sequence(b, SeqMode::corrected, 1);
        CHECK(F.is_zero(F.sub(evaluate_f_beta(F, cor.seq), endpoints(F).l)));
    }
    Field F(Base::parse(kMinus2));
    CHECK(F.is_zero(evaluate_f_beta(F, Word{0, 0, 0})));
    CHECK(equals_rational(F, evaluate_f_beta(F, DigitSequence::make({}, {1, 0})), q(-2, 3)));
}

TEST_CASE("property: expansions reconstruct the point") {
    std::mt19937_64 rng(11);
    for (const char* desc : {kMinus2, kGolden, kEx1, kLevel0}) {
        Base b = Base::parse(desc);
        Field F(b);
        double beta = b.approx();
        double l = beta / (1 - beta);
        std::uniform_int_distribution<long> num(1, 9999);
        for (int t = 0; t < 20; ++t) {
            mpq_class x = mpq_class(l) + mpq_class(num(rng), 10000);
            x.canonicalize();
            const std::size_t n = 30;
            Expansion e = expand(b, x, n);
            REQUIRE(e.shift == 0);
            double diff = F.to_double(F.sub(evaluate_f_beta(F, e.digits), F.from_rational(x)));
            // The remainder is beta^-n times a point of [l, r).
            CHECK(std::fabs(diff) <= std::pow(std::fabs(beta), -static_cast<double>(n)) + 1e-15);
            for (int a : e.digits) {
                CHECK(a >= 0);
                CHECK(a <= static_cast<int>(std::floor(std::fabs(beta))));
            }
        }
    }
}

TEST_CASE("property: odd-period correction") {
    // A raw purely periodic sequence of odd period p becomes (d_1..d_(p-1) (d_p - 1) 0)^inf.
    DigitSequence raw = DigitSequence::make({}, {2});
    CHECK(correct_lower(raw, -1).str() == "(10)");
    DigitSequence even = DigitSequence::make({}, {2, 0});
    CHECK(correct_lower(even, -1) == even);
    DigitSequence pre = DigitSequence::make({1}, {0});
    CHECK(correct_lower(pre, -1) == pre);
    CHECK(correct_lower(raw, 1) == raw);
}

}
