#include "negbeta/serialize.hpp"

#include "sample_bases.hpp"

#include <doctest.h>

using namespace negbeta;
using namespace negbeta::samples;

namespace {

template <class T>
T round_trip(const T& v) {
    json j = v;
    return json::parse(j.dump()).get<T>();
}

} // namespace

TEST_SUITE("serialize") {

TEST_CASE("big integers travel as strings") {
    mpz_class big("123456789012345678901234567890");
    json j = mpz_to_json(big);
    CHECK(j.is_string());
    CHECK(mpz_from_json(j) == big);
}

TEST_CASE("sequences and bases") {
    DigitSequence s = DigitSequence::make({2, 0, 1}, {2, 1});
    CHECK(round_trip(s) == s);
    for (const char* desc : {kMinus2, kGolden, kEx1, "beta=-1.75"}) {
        Base b = Base::parse(desc);
        json j = b;
        Base back = base_from_json(json::parse(j.dump()));
        CHECK(back.descriptor() == b.descriptor());
        CHECK(back.exact() == b.exact());
    }
    SequenceResult r = characteristic_sequence(Base::parse(kEx1), SeqMode::corrected, 20);
    SequenceResult rr = round_trip(r);
    CHECK(rr.seq == r.seq);
    CHECK(rr.prefix == r.prefix);
    CHECK(rr.periodic == r.periodic);
    Expansion e = expand(Base::parse(kMinus2), mpq_class(5), 8);
    Expansion ee = round_trip(e);
    CHECK(ee.shift == e.shift);
    CHECK(ee.digits == e.digits);
}

TEST_CASE("ordering results") {
    OrderResult o = round_trip(alt_compare(Word{2, 0, 1}, Word{2, 0, 2}, -1));
    CHECK(o.relation == Relation::greater);
    CHECK(o.witness == 3);
    AdmissibilityReport a = round_trip(is_admissible(Word{1, 0, 1}, Shift::from_base(Base::parse(kGolden))));
    CHECK_FALSE(a.admissible);
    CHECK(a.violated != Bound::none);
}

TEST_CASE("codes") {
    Shift shift = Shift::from_base(Base::parse(kEx1));
    CodeFamily f = enumerate_family(shift, FamilySpec::parse("Delta_1"), 16);
    CodeFamily ff = round_trip(f);
    CHECK(ff.words == f.words);
    CHECK(ff.counts == f.counts);
    CHECK(ff.spec.name() == "Delta_1");
    CodeStatistics st = code_statistics(f.counts, 2.7767892598L);
    CodeStatistics sst = round_trip(st);
    CHECK(sst.kraft.truncated == st.kraft.truncated);
    CHECK(sst.gcd == st.gcd);
    CHECK(sst.messages == st.messages);
    Decomposition d = decompose_characteristic(shift.lower(), 16);
    Decomposition dd = round_trip(d);
    REQUIRE(dd.blocks.size() == d.blocks.size());
    CHECK(dd.blocks[2].p == d.blocks[2].p);
    SeriesReport sr = round_trip(verify_series_identity(shift, 10));
    CHECK(sr.all_equal);
    CHECK(sr.lhs == sr.rhs);
}

TEST_CASE("measures") {
    Classification c = round_trip(classify_interval(Base::parse(kGamma1)));
    CHECK(c.level == 0);
    CHECK(c.boundary);
    Base b = Base::parse(kGolden);
    CylinderMeasure m = round_trip(cylinder_measure({Word{1}, 0}, support_code(b), b));
    CHECK(m.in_code);
    CHECK(m.method == "code");
    IntransitiveResult r = round_trip(is_intransitive(Word{0, 1, 1, 0, 0}, Base::parse(kLevel1)));
    CHECK(r.intransitive);
    REQUIRE(r.match.has_value());
    CHECK(r.match->pattern == Word{0, 1, 1, 0, 0});
    SimulationReport rep = orbit_simulate(b, 100000, 9, {CylinderQuery{{0}, 0}});
    SimulationReport back = round_trip(rep);
    CHECK(back.seed == 9);
    CHECK(back.steps == rep.steps);
    REQUIRE(back.queries.size() == 1);
    CHECK(back.queries[0].hits == rep.queries[0].hits);
    CHECK(back.queries[0].word == Word{0});
}

}
