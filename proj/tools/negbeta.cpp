#include "negbeta/automaton.hpp"
#include "negbeta/codes.hpp"
#include "negbeta/errors.hpp"
#include "negbeta/exchange.hpp"
#include "negbeta/measure.hpp"
#include "negbeta/numeration.hpp"
#include "negbeta/ordering.hpp"
#include "negbeta/serialize.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <sstream>

using namespace negbeta;

namespace {

constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct Settings {
    std::string base;
    std::string format = "text";
    int precision = kDefaultPrecision;
    std::size_t max_len = 40;
    std::size_t degree = 20;
    std::size_t digit_horizon = 60;
    int precision_cap = kDefaultPrecisionCap;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Settings g;

json settings_json() {
    return json{{"precision", g.precision},
                {"max_len", g.max_len},
                {"degree", g.degree},
                {"digit_horizon", g.digit_horizon},
                {"precision_cap", g.precision_cap}};
}

std::string header(const std::string& cmd) {
    std::ostringstream os;
    os << "# negbeta " << cmd << " precision=" << g.precision << " max_len=" << g.max_len << " degree=" << g.degree
       << " digit_horizon=" << g.digit_horizon << " precision_cap=" << g.precision_cap;
    return os.str();
}

void require_format(const std::string& cmd, std::initializer_list<const char*> allowed) {
    for (const char* f : allowed)
        if (g.format == f) return;
    std::string list;
    for (const char* f : allowed) list += std::string(list.empty() ? "" : ", ") + f;
    throw UsageError("--format " + g.format + " is not available for " + cmd + " (expected one of: " + list + ")");
}

Base load_base() {
    if (g.base.empty()) throw UsageError("--base is required (beta=<decimal> or poly=<c0,...,ck>;interval=<lo>,<hi>)");
    return Base::parse(g.base, g.precision).with_precision_cap(g.precision_cap);
}

void emit_json(const std::string& cmd, json body) {
    json out = {{"command", cmd}, {"settings", settings_json()}};
    for (auto it = body.begin(); it != body.end(); ++it) out[it.key()] = it.value();
    std::cout << out.dump(2) << "\n";
}

Word parse_word_arg(const std::string& text, const char* flag) {
    try {
        return parse_word(text);
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + " expects comma-separated decimal digits, got '" + text + "'");
    }
}

std::string decimal(double v, int digits = 12) {
    std::ostringstream os;
    os.precision(digits);
    os << v;
    return os.str();
}

// ---- subcommands -------------------------------------------------------

struct CharseqArgs {
    std::string mode = "corrected";
    std::string bound = "lower";
};

int run_charseq(const CharseqArgs& a) {
    require_format("charseq", {"json", "text"});
    Base b = load_base();
    SeqMode mode = a.mode == "raw" ? SeqMode::raw : SeqMode::corrected;
    SequenceResult r = a.bound == "upper" ? upper_sequence(b, mode, g.max_len) : characteristic_sequence(b, mode, g.max_len);
    if (g.format == "json") {
        emit_json("charseq", {{"base", b}, {"mode", a.mode}, {"bound", a.bound}, {"result", r}});
    } else {
        std::cout << header("charseq") << "\n";
        if (r.periodic) std::cout << r.seq.str() << "\n";
        else std::cout << format_word(r.prefix) << "...\n";
    }
    return 0;
}

struct ExpandArgs {
    std::string x;
    std::size_t digits = 40;
};

mpq_class parse_rational_arg(const std::string& text) {
    // Reuse the base descriptor grammar for decimals and fractions.
    std::string t = text;
    auto slash = t.find('/');
    try {
        if (slash != std::string::npos) {
            mpq_class q(mpz_class(t.substr(0, slash)), mpz_class(t.substr(slash + 1)));
            if (q.get_den() == 0) throw UsageError("zero denominator");
            q.canonicalize();
            return q;
        }
        auto dot = t.find('.');
        if (dot == std::string::npos) return mpq_class(mpz_class(t));
        std::string frac = t.substr(dot + 1);
        std::string whole = t.substr(0, dot);
        bool neg = !whole.empty() && whole[0] == '-';
        if (neg || (!whole.empty() && whole[0] == '+')) whole = whole.substr(1);
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
        mpq_class q(mpz_class((whole.empty() ? "0" : whole) + frac), den);
        q.canonicalize();
        return neg ? mpq_class(-q) : q;
    } catch (const std::invalid_argument&) {
        throw UsageError("--x expects a decimal or a fraction p/q, got '" + text + "'");
    }
}

int run_expand(const ExpandArgs& a) {
    require_format("expand", {"json", "text"});
    Base b = load_base();
    Expansion e = expand(b, parse_rational_arg(a.x), a.digits);
    if (g.format == "json") {
        emit_json("expand", {{"base", b}, {"x", a.x}, {"expansion", e}});
    } else {
        std::cout << header("expand") << "\nshift " << e.shift << "\ndigits " << format_word(e.digits) << "\n";
    }
    return 0;
}

struct CompareArgs {
    int delta = -1;
    std::string x, y, x_period, y_period;
    bool strict = false;
};

int run_compare(const CompareArgs& a) {
    require_format("compare", {"json", "text"});
    if (a.delta != 1 && a.delta != -1) throw UsageError("--delta must be 1 or -1");
    Word x = parse_word_arg(a.x, "--x"), y = parse_word_arg(a.y, "--y");
    OrderResult r;
    if (!a.x_period.empty() || !a.y_period.empty()) {
        if (a.x_period.empty() || a.y_period.empty())
            throw UsageError("--x-period and --y-period must be given together");
        DigitSequence sx = DigitSequence::make(x, parse_word_arg(a.x_period, "--x-period"));
        DigitSequence sy = DigitSequence::make(y, parse_word_arg(a.y_period, "--y-period"));
        r = alt_compare(sx, sy, a.delta);
    } else {
        r = alt_compare(x, y, a.delta, a.strict);
    }
    if (g.format == "json") emit_json("compare", {{"delta", a.delta}, {"order", r}});
    else std::cout << header("compare") << "\n" << relation_name(r.relation) << "\n";
    return 0;
}

struct AdmissibleArgs {
    std::string word, period;
};

int run_admissible(const AdmissibleArgs& a) {
    require_format("admissible", {"json", "text"});
    Base b = load_base();
    Shift sh = Shift::from_base(b);
    Word w = parse_word_arg(a.word, "--word");
    AdmissibilityReport r = a.period.empty() ? is_admissible(w, sh)
                                             : is_admissible(DigitSequence::make(w, parse_word_arg(a.period, "--period")), sh);
    if (g.format == "json") {
        emit_json("admissible", {{"base", b}, {"word", w}, {"period", a.period}, {"report", r}});
    } else {
        std::cout << header("admissible") << "\n" << (r.admissible ? "admissible" : "inadmissible");
        if (!r.admissible) std::cout << " (suffix at " << r.violating_suffix << ")";
        std::cout << "\n";
    }
    return r.admissible ? 0 : kExitNegative;
}

struct CountArgs {
    std::size_t n = 12;
    bool brute = false;
};

int run_count(const CountArgs& a) {
    require_format("count", {"json", "csv", "text"});
    Base b = load_base();
    Shift sh = Shift::from_base(b);
    std::vector<mpz_class> h = count_words(sh.lower(), a.n);
    std::vector<std::size_t> bf;
    if (a.brute) bf = brute_force_language(sh, a.n).counts;
    if (g.format == "json") {
        json hs = json::array();
        for (auto& v : h) hs.push_back(mpz_to_json(v));
        json body = {{"base", b}, {"H", hs}};
        if (a.brute) body["brute_force"] = bf;
        emit_json("count", body);
    } else {
        std::cout << header("count") << "\n";
        std::cout << (a.brute ? "n,H_n,brute_force\n" : "n,H_n\n");
        for (std::size_t n = 0; n <= a.n; ++n) {
            std::cout << n << "," << h[n].get_str();
            if (a.brute) std::cout << "," << bf[n];
            std::cout << "\n";
        }
    }
    if (a.brute)
        for (std::size_t n = 0; n <= a.n; ++n)
            if (h[n] != static_cast<unsigned long>(bf[n])) return kExitNegative;
    return 0;
}

struct CodeArgs {
    std::string family = "C_beta";
    bool stats = false;
    bool decompose = false;
};

int run_code(const CodeArgs& a) {
    require_format("code", {"json", "csv", "text"});
    Base b = load_base();
    Shift sh = Shift::from_base(b);
    FamilySpec spec = FamilySpec::parse(a.family);
    CodeFamily f = enumerate_family(sh, spec, g.max_len);
    CodeStatistics st = code_statistics(f.counts, std::fabs(b.approx_ld()));
    if (g.format == "json") {
        json body = {{"base", b}, {"code", f}};
        if (a.stats) body["statistics"] = st;
        if (a.decompose) body["decomposition"] = decompose_characteristic(sh.lower(), g.max_len);
        emit_json("code", body);
        return 0;
    }
    std::cout << header("code") << "\n";
    if (g.format == "csv") {
        std::cout << "length,count\n";
        for (std::size_t n = 1; n < f.counts.size(); ++n) std::cout << n << "," << f.counts[n].get_str() << "\n";
        return 0;
    }
    std::cout << f.spec.name() << " up to length " << f.max_len << "\n";
    if (f.listed)
        for (const Word& w : f.words) std::cout << format_word(w) << "\n";
    else
        std::cout << "(counts only)\n";
    if (a.stats) {
        std::cout << "kraft " << decimal(st.kraft.truncated) << " + tail " << decimal(st.kraft.tail)
                  << (st.kraft.tail_valid ? " (valid)" : " (invalid)") << "\n";
        std::cout << "average_length " << decimal(st.average_length.value()) << "\n";
        std::cout << "gcd " << st.gcd << "\n";
        std::cout << "max_message_ratio " << decimal(st.max_message_ratio) << "\n";
    }
    if (a.decompose) {
        Decomposition d = decompose_characteristic(sh.lower(), g.max_len);
        for (const Block& blk : d.blocks)
            std::cout << "block q=" << blk.q << " p=" << blk.p << " level=" << blk.level << "\n";
    }
    return 0;
}

struct AutomatonArgs {
    bool minimal = false;
};

int run_automaton(const AutomatonArgs& a) {
    require_format("automaton", {"json", "dot", "text"});
    Base b = load_base();
    SupportAutomaton A = SupportAutomaton::build(Shift::from_base(b).lower());
    const auto& M = A.minimal();
    if (g.format == "dot") {
        std::cout << (a.minimal ? M.dot() : A.dot());
        return 0;
    }
    if (g.format == "json") {
        json states = json::array();
        for (std::size_t s = 0; s < A.size(); ++s) {
            json row = json::array();
            for (int x = 0; x < A.alphabet(); ++x) row.push_back(A.next(s, x));
            states.push_back({{"lower", A.state(s).lower}, {"upper", A.state(s).upper}, {"next", row}});
        }
        json body = {{"base", b},
                     {"alphabet", A.alphabet()},
                     {"states", states},
                     {"support", A.support_states()},
                     {"spectral_radius", A.spectral_radius()}};
        if (a.minimal) {
            std::vector<double> left(M.left.begin(), M.left.end()), right(M.right.begin(), M.right.end());
            body["minimal"] = {{"delta", M.delta}, {"left", left}, {"right", right}, {"radius", static_cast<double>(M.radius)}};
        }
        emit_json("automaton", body);
        return 0;
    }
    std::cout << header("automaton") << "\n";
    std::cout << "states " << A.size() << "\nsupport " << A.support_states().size() << "\nminimal " << M.size()
              << "\nspectral_radius " << decimal(A.spectral_radius()) << "\n";
    return 0;
}

int run_identity() {
    require_format("identity", {"json", "csv", "text"});
    Base b = load_base();
    SeriesReport r = verify_series_identity(Shift::from_base(b), g.degree);
    if (g.format == "json") {
        emit_json("identity", {{"base", b}, {"report", r}});
    } else {
        std::cout << header("identity") << "\n";
        if (g.format == "text") {
            std::cout << (r.all_equal ? "equal" : "different") << " through degree " << g.degree << "\n";
        }
        std::cout << "n,lhs,rhs,equal\n";
        for (std::size_t n = 0; n < r.lhs.size(); ++n)
            std::cout << n << "," << r.lhs[n].get_str() << "," << r.rhs[n].get_str() << "," << (r.equal[n] ? 1 : 0) << "\n";
    }
    return r.all_equal ? 0 : kExitNegative;
}

struct GammaArgs {
    int n = 0;
};

int run_gamma(const GammaArgs& a) {
    require_format("gamma", {"json", "text"});
    GammaBound gb = gamma_bound(a.n, g.precision);
    int digits = static_cast<int>(std::floor(g.precision * std::log10(2.0)));
    Interval enc = gb.base.enclosure(static_cast<mpfr_prec_t>(g.precision + 16));
    Real mid(g.precision + 16);
    mpfr_add(mid.get(), enc.lo.get(), enc.hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    std::string value = mid.to_string(digits);
    if (g.format == "json") {
        emit_json("gamma", {{"n", a.n},
                            {"l_u", gb.lu},
                            {"l_v", gb.lv},
                            {"l_n", gb.ln},
                            {"value", value},
                            {"polynomial", gb.base.descriptor()},
                            {"negative", gb.negative.descriptor()},
                            {"residual", gb.residual}});
    } else {
        std::cout << header("gamma") << "\n" << value << "\n";
    }
    return 0;
}

struct ClassifyArgs {
    std::size_t horizon = kClassifyHorizon;
};

int run_classify(const ClassifyArgs& a) {
    require_format("classify", {"json", "text"});
    Base b = load_base();
    Classification c = classify_interval(b, a.horizon);
    if (g.format == "json") emit_json("classify", {{"base", b}, {"classification", c}});
    else std::cout << header("classify") << "\n" << c.describe() << "\n";
    return 0;
}

struct UpsilonArgs {
    bool inverse = false;
    int n = 0;
    double tol = 1e-12;
};

int run_upsilon(const UpsilonArgs& a) {
    require_format("upsilon", {"json", "text"});
    Base b = load_base();
    ExchangeOptions opt;
    opt.digit_horizon = g.digit_horizon;
    opt.tol = a.tol;
    ExchangeResult r = a.inverse ? upsilon_inverse(b, a.n, opt) : upsilon(b, opt);
    if (g.format == "json") {
        emit_json("upsilon", {{"input", b},
                              {"inverse", a.inverse},
                              {"level", r.level},
                              {"result", r.base},
                              {"exact", r.exact},
                              {"target_prefix", r.target_prefix},
                              {"bracket", {r.lo.get_str(), r.hi.get_str()}},
                              {"iterations", r.iterations},
                              {"digits_matched", r.digits_matched}});
    } else {
        std::cout << header("upsilon") << "\n";
        std::cout << r.base.descriptor() << "\n" << decimal(r.base.approx(), 15) << "\n";
        std::cout << "level " << r.level << (r.exact ? " exact" : " approximate") << "\n";
    }
    return 0;
}

struct TnArgs {
    int n = 0;
};

int run_tn(const TnArgs& a) {
    require_format("tn", {"json", "text"});
    if (a.n < 0) throw UsageError("--n must be >= 0");
    Base b = load_base();
    Field F(b);
    FieldElement t = t_threshold(F, a.n), td = t_from_digits(F, a.n), tp = t_threshold_uncorrected(F, a.n);
    double diff = std::fabs(F.to_double(F.sub(t, td)));
    if (g.format == "json") {
        emit_json("tn", {{"base", b},
                         {"n", a.n},
                         {"t_n", F.to_decimal(t, 20)},
                         {"from_digits", F.to_decimal(td, 20)},
                         {"uncorrected_closed_form", F.to_decimal(tp, 20)},
                         {"difference", diff}});
    } else {
        std::cout << header("tn") << "\n" << F.to_decimal(t, 20) << "\nfrom_digits " << F.to_decimal(td, 20)
                  << "\ndifference " << decimal(diff) << "\n";
    }
    return 0;
}

struct MeasureArgs {
    std::string word;
    long offset = 0;
};

int run_measure(const MeasureArgs& a) {
    require_format("measure", {"json", "text"});
    Base b = load_base();
    SupportCode sc = support_code(b, g.max_len);
    json support = {{"label", sc.label},
                    {"classification", sc.classification},
                    {"boundary", sc.boundary},
                    {"statistics", sc.stats},
                    {"kraft_ok", sc.kraft_ok},
                    {"candidates", sc.candidates},
                    {"code", sc.code}};
    std::optional<CylinderMeasure> m;
    if (!a.word.empty()) m = cylinder_measure({parse_word_arg(a.word, "--word"), a.offset}, sc, b);
    if (g.format == "json") {
        json body = {{"base", b}, {"support", support}};
        if (m) body["cylinder"] = {{"word", parse_word(a.word)}, {"offset", a.offset}, {"measure", *m}};
        emit_json("measure", body);
    } else {
        std::cout << header("measure") << "\n";
        std::cout << "support " << sc.label << (sc.boundary ? " (boundary)" : "") << "\n";
        std::cout << "kraft " << decimal(sc.stats.kraft.value()) << (sc.kraft_ok ? " ok" : " outside tolerance") << "\n";
        std::cout << "average_length " << decimal(sc.stats.average_length.value()) << "\n";
        if (m) {
            std::cout << "measure " << decimal(m->value) << " +- " << decimal(m->error, 3) << " (" << m->method << ")\n";
            std::cout << "automaton " << decimal(m->automaton_value) << "\n";
            if (m->intransitive) std::cout << "intransitive\n";
        }
    }
    return 0;
}

struct IntransitiveArgs {
    std::string word;
    bool patterns = false;
};

int run_intransitive(const IntransitiveArgs& a) {
    require_format("intransitive", {"json", "text"});
    Base b = load_base();
    Word w = parse_word_arg(a.word, "--word");
    IntransitiveResult r = is_intransitive(w, b);
    std::vector<PatternMatch> pats;
    if (a.patterns && r.level >= 0) {
        SequenceResult d = characteristic_sequence(b, SeqMode::corrected, 1);
        int k1 = d.periodic ? phi_decode(d.seq, r.level + 1).at(1) : -1;
        if (k1 >= 0) pats = intransitive_patterns(r.level, k1);
    }
    if (g.format == "json") {
        json body = {{"base", b}, {"word", w}, {"result", r}};
        if (a.patterns) body["patterns"] = pats;
        emit_json("intransitive", body);
    } else {
        std::cout << header("intransitive") << "\n";
        if (!r.intransitive) std::cout << "transitive\n";
        else if (r.match)
            std::cout << "intransitive family " << r.match->family << " pattern " << format_word(r.match->pattern)
                      << " at " << r.match->position << "\n";
        else std::cout << "intransitive (not a factor of the support)\n";
        for (const auto& p : pats) std::cout << "pattern " << p.family << " " << format_word(p.pattern) << "\n";
    }
    return r.intransitive ? 0 : kExitNegative;
}

struct SimulateArgs {
    std::uint64_t steps = 10000000;
    std::uint64_t seed = 1;
    std::string words;
    unsigned workers = 1;
};

int run_simulate(const SimulateArgs& a) {
    require_format("simulate", {"json", "csv", "text"});
    Base b = load_base();
    std::vector<CylinderQuery> qs;
    std::stringstream ss(a.words);
    std::string item;
    while (std::getline(ss, item, ';'))
        if (!item.empty()) qs.push_back({parse_word_arg(item, "--words"), 0});
    SimulationReport r = orbit_simulate_parallel(b, a.steps, a.seed, qs, a.workers);
    if (g.format == "json") {
        emit_json("simulate", {{"base", b}, {"workers", a.workers}, {"report", r}});
        return 0;
    }
    std::cout << header("simulate") << " generator=" << r.generator << " seed=" << r.seed << " steps=" << r.steps
              << " workers=" << a.workers << "\n";
    if (r.support_fraction >= 0) std::cout << "# level=" << r.level << " support_fraction=" << decimal(r.support_fraction)
                  << " closed_fraction=" << decimal(r.closed_fraction) << "\n";
    if (r.reseeds) std::cout << "# reseeds=" << r.reseeds << "\n";
    std::cout << "word,analytic,empirical,stderr,steps,seed\n";
    for (const auto& q : r.queries)
        std::cout << format_word_csv(q.word).insert(0, "\"").append("\"") << "," << decimal(q.analytic) << ","
                  << decimal(q.empirical) << "," << decimal(q.stderr_binomial, 6) << "," << r.steps << "," << r.seed
                  << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Negative base numeration, codes and maximal-entropy measures"};
    app.require_subcommand(1);
    if (const char* cap = std::getenv("NEGBETA_PREC_CAP")) {
        try {
            g.precision_cap = std::stoi(cap);
        } catch (const std::exception&) {
            std::cerr << "error: NEGBETA_PREC_CAP must be an integer number of bits\n";
            return kExitUsage;
        }
        if (g.precision_cap < 64) {
            std::cerr << "error: NEGBETA_PREC_CAP must be at least 64\n";
            return kExitUsage;
        }
    }

    auto common = [&](CLI::App* sub, bool with_base) {
        if (with_base)
            sub->add_option("--base", g.base, "beta=<decimal> or poly=<c0,...,ck>;interval=<lo>,<hi> (ascending coefficients)");
        sub->add_option("--format", g.format, "json, csv, dot or text")
            ->check(CLI::IsMember({"json", "csv", "dot", "text"}));
        sub->add_option("--prec,--precision", g.precision, "working precision in bits")->check(CLI::Range(64, 1 << 20));
        sub->add_option("--max-len", g.max_len, "maximal word length")->check(CLI::Range(1, 10000));
        sub->add_option("--degree", g.degree, "series degree")->check(CLI::Range(0, 10000));
        sub->add_option("--horizon,--digit-horizon", g.digit_horizon, "digits matched by the exchange maps")
            ->check(CLI::Range(1, 1000000));
    };

    CharseqArgs charseq;
    auto* c_charseq = app.add_subcommand("charseq", "characteristic sequence of the left endpoint");
    common(c_charseq, true);
    c_charseq->add_option("--mode", charseq.mode, "raw or corrected")->check(CLI::IsMember({"raw", "corrected"}));
    c_charseq->add_option("--bound", charseq.bound, "lower or upper")->check(CLI::IsMember({"lower", "upper"}));

    ExpandArgs expandA;
    auto* c_expand = app.add_subcommand("expand", "digit expansion of a rational point");
    common(c_expand, true);
    c_expand->add_option("--x", expandA.x, "rational point (decimal or p/q)")->required();
    c_expand->add_option("--digits", expandA.digits, "number of digits")->check(CLI::Range(0, 1000000));

    CompareArgs compare;
    auto* c_compare = app.add_subcommand("compare", "alternating order comparison");
    common(c_compare, false);
    c_compare->add_option("--delta", compare.delta, "sign of the base, 1 or -1");
    c_compare->add_option("--x", compare.x, "first word (preperiod when --x-period is given)")->required();
    c_compare->add_option("--y", compare.y, "second word")->required();
    c_compare->add_option("--x-period", compare.x_period, "period of x");
    c_compare->add_option("--y-period", compare.y_period, "period of y");
    c_compare->add_flag("--strict", compare.strict, "reject words of different lengths when one is a prefix");

    AdmissibleArgs admissible;
    auto* c_adm = app.add_subcommand("admissible", "admissibility of a word or eventually periodic sequence");
    common(c_adm, true);
    c_adm->add_option("--word", admissible.word, "word (preperiod when --period is given)")->required();
    c_adm->add_option("--period", admissible.period, "period of an eventually periodic sequence");

    CountArgs count;
    auto* c_count = app.add_subcommand("count", "number of admissible words per length");
    common(c_count, true);
    c_count->add_option("--n", count.n, "largest length")->check(CLI::Range(0, 100000));
    c_count->add_flag("--brute", count.brute, "compare with exhaustive enumeration");

    CodeArgs code;
    auto* c_code = app.add_subcommand("code", "enumerate a code family");
    common(c_code, true);
    c_code->add_option("--family", code.family, "Gamma0, Gamma1, Delta00, E, C_beta, Delta_<i> or J_<i>");
    c_code->add_flag("--stats", code.stats, "Kraft sum, average length, gcd and message growth");
    c_code->add_flag("--decompose", code.decompose, "block decomposition of the characteristic sequence");

    AutomatonArgs automaton;
    auto* c_aut = app.add_subcommand("automaton", "follower automaton of the support");
    common(c_aut, true);
    c_aut->add_flag("--minimal", automaton.minimal, "minimized support component");

    auto* c_identity = app.add_subcommand("identity", "series identity check");
    common(c_identity, true);

    GammaArgs gamma;
    auto* c_gamma = app.add_subcommand("gamma", "exchange thresholds gamma_n");
    common(c_gamma, false);
    c_gamma->add_option("--n", gamma.n, "index")->check(CLI::Range(0, 40));

    ClassifyArgs classify;
    auto* c_classify = app.add_subcommand("classify", "coded range or exchange level");
    common(c_classify, true);
    c_classify->add_option("--classify-horizon", classify.horizon, "digits compared for aperiodic sequences");

    UpsilonArgs upsilonA;
    auto* c_ups = app.add_subcommand("upsilon", "interval exchange map and its inverse");
    common(c_ups, true);
    c_ups->add_flag("--inverse", upsilonA.inverse, "map x <= -gamma_0 to level n");
    c_ups->add_option("--n", upsilonA.n, "target level for --inverse")->check(CLI::Range(0, 12));
    c_ups->add_option("--tol", upsilonA.tol, "bisection tolerance");

    TnArgs tn;
    auto* c_tn = app.add_subcommand("tn", "support threshold t_n");
    common(c_tn, true);
    c_tn->add_option("--n", tn.n, "index");

    MeasureArgs measure;
    auto* c_measure = app.add_subcommand("measure", "support code and cylinder measure");
    common(c_measure, true);
    c_measure->add_option("--word", measure.word, "cylinder word");
    c_measure->add_option("--offset", measure.offset, "cylinder position");

    IntransitiveArgs intrans;
    auto* c_intr = app.add_subcommand("intransitive", "intransitive pattern test");
    common(c_intr, true);
    c_intr->add_option("--word", intrans.word, "word")->required();
    c_intr->add_flag("--patterns", intrans.patterns, "list the instantiated patterns");

    SimulateArgs simulate;
    auto* c_sim = app.add_subcommand("simulate", "orbit simulation with cylinder frequencies");
    common(c_sim, true);
    c_sim->add_option("--steps", simulate.steps, "orbit length")->check(CLI::Range(static_cast<std::uint64_t>(100000), static_cast<std::uint64_t>(1) << 40));
    c_sim->add_option("--seed", simulate.seed, "generator seed");
    c_sim->add_option("--words", simulate.words, "query words separated by ';'");
    c_sim->add_option("--workers", simulate.workers, "independent seeds run in parallel")->check(CLI::Range(1, 256));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*c_charseq) return run_charseq(charseq);
        if (*c_expand) return run_expand(expandA);
        if (*c_compare) return run_compare(compare);
        if (*c_adm) return run_admissible(admissible);
        if (*c_count) return run_count(count);
        if (*c_code) return run_code(code);
        if (*c_aut) return run_automaton(automaton);
        if (*c_identity) return run_identity();
        if (*c_gamma) return run_gamma(gamma);
        if (*c_classify) return run_classify(classify);
        if (*c_ups) return run_upsilon(upsilonA);
        if (*c_tn) return run_tn(tn);
        if (*c_measure) return run_measure(measure);
        if (*c_intr) return run_intransitive(intrans);
        if (*c_sim) return run_simulate(simulate);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NumericError& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
