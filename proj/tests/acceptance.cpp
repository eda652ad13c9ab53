// Acceptance report: one PASS/FAIL line per criterion.
#include "negbeta/automaton.hpp"
#include "negbeta/codes.hpp"
#include "negbeta/errors.hpp"
#include "negbeta/exchange.hpp"
#include "negbeta/measure.hpp"
#include "negbeta/numeration.hpp"
#include "negbeta/ordering.hpp"

#include "sample_bases.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>

using namespace negbeta;
using namespace negbeta::samples;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream notes;
    void check(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes << " [failed: " << what << "]";
        }
    }
};

using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Verdict&)>& body, double limit_s = 0) {
    Verdict v;
    auto t0 = Clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.pass = false;
        v.notes << " [exception: " << e.what() << "]";
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (limit_s > 0 && secs > limit_s) {
        v.pass = false;
        v.notes << " [runtime " << secs << " s exceeds " << limit_s << " s]";
    }
    if (!v.pass) ++failures;
    std::cout << "criterion " << id << ": " << (v.pass ? "PASS" : "FAIL") << "  " << title << " (" << secs << " s)"
              << v.notes.str() << std::endl;
}

std::set<Word> as_set(const CodeFamily& f) { return {f.words.begin(), f.words.end()}; }

std::set<Word> words(std::initializer_list<const char*> list) {
    std::set<Word> out;
    for (const char* w : list) {
        Word x;
        for (const char* c = w; *c; ++c) x.push_back(*c - '0');
        out.insert(x);
    }
    return out;
}

std::string show(const std::set<Word>& s) {
    std::string out = "{";
    for (const Word& w : s) out += (out.size() > 1 ? "," : "") + format_word(w);
    return out + "}";
}

// Factor of P*: w splits as (suffix of a code word) (code words) (prefix of a code word),
// or sits inside a single code word.
bool factor_of_messages(const Word& w, const std::vector<Word>& code) {
    std::size_t n = w.size();
    auto matches = [&](const Word& x, std::size_t xi, std::size_t wi, std::size_t len) {
        for (std::size_t k = 0; k < len; ++k)
            if (x[xi + k] != w[wi + k]) return false;
        return true;
    };
    for (const Word& x : code)
        if (x.size() >= n)
            for (std::size_t i = 0; i + n <= x.size(); ++i)
                if (matches(x, i, 0, n)) return true;
    // reach[i]: w[0..i) is covered and position i starts a code word.
    std::vector<char> reach(n + 1, 0);
    reach[0] = 1;
    for (std::size_t i = 1; i <= n; ++i)
        for (const Word& x : code)
            if (x.size() > i && matches(x, x.size() - i, 0, i)) {
                reach[i] = 1;
                break;
            }
    for (std::size_t i = 0; i <= n; ++i) {
        if (!reach[i]) continue;
        if (i == n) return true;
        for (const Word& x : code) {
            std::size_t len = std::min(x.size(), n - i);
            if (!matches(x, 0, i, len)) continue;
            if (i + x.size() >= n) return true;
            reach[i + x.size()] = 1;
        }
    }
    return false;
}

} // namespace

int main() {
    std::cout << "acceptance report" << std::endl;

    report(1, "first worked example: sequence and code families", [](Verdict& v) {
        Base b = Base::parse(kEx1);
        SequenceResult d = characteristic_sequence(b, SeqMode::corrected, 40);
        v.check(d.periodic && d.seq == DigitSequence::make(parse_word("2,0,1,2,1,2,1,2,0,1,2,0,0"), {2, 1}),
                "corrected sequence " + d.seq.str());
        Shift sh = Shift::from_base(b);
        auto fam = [&](const char* name) { return as_set(enumerate_family(sh, FamilySpec::parse(name), 8)); };
        auto g0 = fam("Gamma0"), d0 = fam("Delta_0"), d1 = fam("Delta_1"), d2 = fam("Delta_2");
        v.check(g0 == words({"0", "1", "21", "200"}), "Gamma0 " + show(g0));
        v.check(d0 == words({"2"}), "Delta_0 " + show(d0));
        v.check(d2 == words({"2012121"}), "Delta_2 " + show(d2));
        v.check(d1 == words({"201", "20121"}), "Delta_1 " + show(d1));
    }, 10);

    report(2, "second worked example: sequence and Delta_0^0", [](Verdict& v) {
        Base b = Base::parse(kEx2);
        SequenceResult d = characteristic_sequence(b, SeqMode::corrected, 40);
        v.check(d.periodic && d.seq == DigitSequence::make(parse_word("2,0,1,2,1,2,1,2,0,1,2,0,0"), {1}),
                "corrected sequence " + d.seq.str());
        auto f = as_set(enumerate_family(Shift::from_base(b), FamilySpec::parse("Delta00"), 15));
        for (const Word& w : words({"2", "2012121201200", "201212120120011"}))
            v.check(f.count(w) == 1, "Delta00 lacks " + format_word(w) + " in " + show(f));
    });

    report(3, "series identity through degree 20", [](Verdict& v) {
        for (const char* desc : {kMinus2, kGolden, kEx1, kLevel0}) {
            SeriesReport r = verify_series_identity(Shift::from_base(Base::parse(desc)), 20);
            v.check(r.all_equal, std::string("coefficients differ at ") + desc);
        }
    }, 30);

    report(4, "Kraft sum and average length of the support code", [](Verdict& v) {
        for (const char* desc : {kMinus2, kGolden, kEx1, kLevel0}) {
            Base b = Base::parse(desc);
            SupportCode sc = support_code(b, 40);
            double err = std::fabs(sc.stats.kraft.value() - 1.0);
            std::ostringstream os;
            os << sc.label << " at " << desc << ": |Kraft-1| = " << err << " tail_valid=" << sc.stats.kraft.tail_valid;
            v.check(sc.stats.kraft.tail_valid && err <= 1e-6, os.str());
            v.check(std::isfinite(sc.stats.average_length.value()), "average length not finite at " + std::string(desc));
        }
        GammaBound g0 = gamma_bound(0, 256);
        Interval x = g0.base.enclosure(256);
        Real inv(300), inv2(300), s(300);
        mpfr_ui_div(inv.get(), 1, x.lo.get(), MPFR_RNDN);
        mpfr_mul(inv2.get(), inv.get(), inv.get(), MPFR_RNDN);
        mpfr_add(s.get(), inv.get(), inv2.get(), MPFR_RNDN);
        mpfr_sub_ui(s.get(), s.get(), 1, MPFR_RNDN);
        v.check(std::fabs(s.to_double()) < std::ldexp(1.0, -240), "golden identity residual");
    });

    report(5, "word counts against brute force and growth rate", [](Verdict& v) {
        for (const char* desc : {kMinus2, kGolden, kEx1}) {
            Base b = Base::parse(desc);
            Shift sh = Shift::from_base(b);
            auto h = count_words(sh.lower(), 21);
            auto bf = brute_force_language(sh, 12).counts;
            for (std::size_t n = 0; n <= 12; ++n)
                v.check(h[n] == static_cast<unsigned long>(bf[n]), "H_" + std::to_string(n) + " at " + desc);
            double ratio = mpq_class(h[21], h[20]).get_d();
            double ab = std::fabs(b.approx());
            v.check(std::fabs(ratio - ab) / ab < 0.02, "growth ratio at " + std::string(desc));
        }
    });

    report(6, "gamma thresholds", [](Verdict& v) {
        const double expect[] = {1.6180339887, 1.3247179572, 1.1347241384};
        double prev = 1e9;
        for (int n = 0; n <= 8; ++n) {
            double val = gamma_bound(n).value;
            if (n < 3) v.check(std::fabs(val - expect[n]) <= 1e-9, "gamma_" + std::to_string(n));
            v.check(val < prev, "not decreasing at " + std::to_string(n));
            prev = val;
        }
    });

    std::vector<Base> round_trip_bases;
    report(7, "interval exchange round trips", [&](Verdict& v) {
        for (const char* desc : {kMinus2, kGolden}) {
            Base x = Base::parse(desc);
            SequenceResult dx = characteristic_sequence(x, SeqMode::corrected, 1);
            for (int n = 0; n <= 2; ++n) {
                ExchangeResult inv = upsilon_inverse(x, n);
                round_trip_bases.push_back(inv.base);
                ExchangeResult back = upsilon(inv.base);
                double err = std::fabs(back.base.approx_ld() - x.approx_ld());
                std::ostringstream os;
                os << desc << " n=" << n << " error " << err;
                v.check(err <= 1e-9, os.str());
                Word got = characteristic_sequence(inv.base, SeqMode::corrected, 60).prefix;
                Word want = phi_apply(dx.seq, n + 1).prefix(60);
                v.check(got == want, "digits differ at " + os.str());
            }
        }
    }, 60);

    report(8, "threshold identity at the round-trip bases", [&](Verdict& v) {
        v.check(round_trip_bases.size() == 6, "round-trip bases missing");
        for (const Base& b : round_trip_bases) {
            Classification c = classify_interval(b);
            Field F(b);
            double diff = std::fabs(F.to_double(F.sub(t_threshold(F, c.level), t_from_digits(F, c.level))));
            std::ostringstream os;
            os << b.descriptor() << " level " << c.level << " diff " << diff;
            v.check(diff < 1e-10, os.str());
        }
    });

    report(9, "code hygiene of the support codes", [](Verdict& v) {
        for (const char* desc : {kMinus2, kGolden, kEx1, kLevel0, kEx2}) {
            Base b = Base::parse(desc);
            Shift sh = Shift::from_base(b);
            SupportCode sc = support_code(b, 20);
            std::string where = sc.label + " at " + desc;
            v.check(sc.code.listed, "not listed: " + where);
            std::pair<Word, Word> wit;
            if (!is_prefix_code(sc.code.words, &wit))
                v.check(false, "not prefix: " + format_word(wit.first) + " < " + format_word(wit.second) + " in " + where);
            bool concat_ok = true;
            for (const Word& x : sc.code.words)
                for (const Word& y : sc.code.words)
                    if (x.size() + y.size() <= 20 && !is_admissible(concat(x, y), sh).admissible) concat_ok = false;
            v.check(concat_ok, "concatenation not admissible: " + where);
            v.check(sc.stats.gcd == 1, "gcd " + std::to_string(sc.stats.gcd) + ": " + where);
        }
    });

    report(10, "support automaton against the brute-force oracle", [](Verdict& v) {
        for (const char* desc : {kMinus2, kGolden, kEx1, kLevel0, kEx2, kGamma1, kLevel1}) {
            Base b = Base::parse(desc);
            Shift sh = Shift::from_base(b);
            SupportAutomaton A = SupportAutomaton::build(sh.lower());
            // Below -gamma_0 the coding theorem makes the support the whole shift; otherwise
            // the support is the factor set of the messages of the selected code.
            Classification c = classify_interval(b);
            bool whole = c.coded && !c.boundary;
            SupportCode sc = whole ? SupportCode{} : support_code(b, 24);
            v.check(whole || sc.code.listed, std::string("support code not listed at ") + desc);
            Language lang = brute_force_language(sh, 12);
            std::set<Word> admissible;
            std::size_t mismatches = 0;
            for (const auto& layer : lang.words)
                for (const Word& w : layer) {
                    admissible.insert(w);
                    bool oracle = whole || factor_of_messages(w, sc.code.words);
                    if (A.accepts_factor(w) != oracle || A.accepts(w) != true) ++mismatches;
                }
            // Every word outside the language is rejected.
            int top = sh.top_digit();
            for (std::size_t n = 1; n <= 8; ++n) {
                Word w(n, 0);
                while (true) {
                    if (!admissible.count(w) && (A.accepts(w) || A.accepts_factor(w))) ++mismatches;
                    std::size_t i = n;
                    while (i > 0 && w[i - 1] == top) w[--i] = 0;
                    if (i == 0) break;
                    ++w[i - 1];
                }
            }
            v.check(mismatches == 0, std::to_string(mismatches) + " mismatches at " + desc);
        }
    });

    report(11, "maximal-entropy measure and orbit statistics", [](Verdict& v) {
        Base golden = Base::parse(kGolden);
        SupportCode sg = support_code(golden, 40);
        double m1 = cylinder_measure({{1}, 0}, sg, golden).value;
        double m00 = cylinder_measure({{0, 0}, 0}, sg, golden).value;
        v.check(std::fabs(m1 + 2 * m00 - 1) <= 1e-12, "normalization at -gamma_0");

        const std::uint64_t steps = 10000000;
        std::size_t total = 0, within = 0;
        for (const char* desc : {kGolden, kLevel0, kMinus2, kEx1}) {
            Base b = Base::parse(desc);
            SupportAutomaton A = SupportAutomaton::build(Shift::from_base(b).lower());
            std::vector<CylinderQuery> qs;
            Language lang = brute_force_language(Shift::from_base(b), 4);
            for (std::size_t n = 1; n <= 4 && qs.size() < 10; ++n)
                for (const Word& w : lang.words[n])
                    if (qs.size() < 10 && A.accepts_factor(w)) qs.push_back({w, 0});
            SimulationReport rep = orbit_simulate(b, steps, 20240601, qs);
            for (const auto& q : rep.queries) {
                ++total;
                double se = std::max(q.stderr_batch, 1.0 / static_cast<double>(steps));
                if (std::fabs(q.empirical - q.analytic) <= 3 * se) ++within;
            }
        }
        std::ostringstream os;
        os << within << "/" << total << " queries within 3 standard errors";
        v.check(total == 40 && within * 100 >= 95 * total, os.str());
        v.notes << " [" << os.str() << "]";

        for (const char* desc : {kLevel0, kLevel1}) {
            Base b = Base::parse(desc);
            Classification c = classify_interval(b);
            int k1 = phi_decode(characteristic_sequence(b, SeqMode::corrected, 1).seq, c.level + 1).at(1);
            auto pats = intransitive_patterns(c.level, k1);
            SupportAutomaton A = SupportAutomaton::build(Shift::from_base(b).lower());
            std::vector<CylinderQuery> qs;
            for (const auto& p : pats) {
                v.check(!A.accepts_factor(p.pattern), "pattern " + format_word(p.pattern) + " is a support factor");
                qs.push_back({p.pattern, 0});
            }
            SimulationReport rep = orbit_simulate(b, steps, 7, qs);
            for (const auto& q : rep.queries)
                v.check(q.empirical < 1e-4, "frequency of " + format_word(q.word) + " at " + desc);
        }
    }, 300);

    std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << std::endl;
    return failures == 0 ? 0 : 1;
}
