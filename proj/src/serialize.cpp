#include "negbeta/serialize.hpp"

#include "negbeta/errors.hpp"

namespace negbeta {

json mpz_to_json(const mpz_class& v) { return v.get_str(); }

mpz_class mpz_from_json(const json& j) {
    if (j.is_number_integer()) return mpz_class(j.get<long>());
    return mpz_class(j.get<std::string>());
}

namespace {

json counts_to_json(const std::vector<mpz_class>& v) {
    json a = json::array();
    for (const auto& c : v) a.push_back(mpz_to_json(c));
    return a;
}

std::vector<mpz_class> counts_from_json(const json& j) {
    std::vector<mpz_class> v;
    for (const auto& c : j) v.push_back(mpz_from_json(c));
    return v;
}

Relation relation_from_name(const std::string& s) {
    if (s == "less") return Relation::less;
    if (s == "equal") return Relation::equal;
    if (s == "greater") return Relation::greater;
    throw InputError("unknown relation '" + s + "'");
}

const char* bound_name(Bound b) {
    switch (b) {
    case Bound::lower: return "lower";
    case Bound::upper: return "upper";
    default: return "none";
    }
}

Bound bound_from_name(const std::string& s) {
    if (s == "lower") return Bound::lower;
    if (s == "upper") return Bound::upper;
    return Bound::none;
}

} // namespace

void to_json(json& j, const DigitSequence& s) { j = json{{"preperiod", s.preperiod}, {"period", s.period}}; }

void from_json(const json& j, DigitSequence& s) {
    s = DigitSequence::make(j.at("preperiod").get<Word>(), j.at("period").get<Word>());
}

void to_json(json& j, const Base& b) {
    j = json{{"descriptor", b.descriptor()}, {"approx", b.approx()}, {"exact", b.exact()}};
}

Base base_from_json(const json& j) { return Base::parse(j.at("descriptor").get<std::string>()); }

void to_json(json& j, const SequenceResult& r) {
    j = json{{"periodic", r.periodic}, {"aperiodic_so_far", r.aperiodic_so_far}, {"prefix", r.prefix},
             {"precision", r.precision}};
    if (r.periodic) {
        j["preperiod"] = r.seq.preperiod;
        j["period"] = r.seq.period;
    }
}

void from_json(const json& j, SequenceResult& r) {
    r.periodic = j.at("periodic").get<bool>();
    r.aperiodic_so_far = j.at("aperiodic_so_far").get<bool>();
    r.prefix = j.at("prefix").get<Word>();
    r.precision = j.at("precision").get<long>();
    if (r.periodic) r.seq = DigitSequence::make(j.at("preperiod").get<Word>(), j.at("period").get<Word>());
}

void to_json(json& j, const Expansion& e) { j = json{{"shift", e.shift}, {"digits", e.digits}}; }

void from_json(const json& j, Expansion& e) {
    e.shift = j.at("shift").get<long>();
    e.digits = j.at("digits").get<Word>();
}

void to_json(json& j, const OrderResult& r) {
    j = json{{"relation", relation_name(r.relation)}, {"witness", r.witness}};
}

void from_json(const json& j, OrderResult& r) {
    r.relation = relation_from_name(j.at("relation").get<std::string>());
    r.witness = j.at("witness").get<std::size_t>();
}

void to_json(json& j, const AdmissibilityReport& r) {
    j = json{{"admissible", r.admissible}, {"violating_suffix", r.violating_suffix}, {"violated", bound_name(r.violated)}};
}

void from_json(const json& j, AdmissibilityReport& r) {
    r.admissible = j.at("admissible").get<bool>();
    r.violating_suffix = j.at("violating_suffix").get<long>();
    r.violated = bound_from_name(j.at("violated").get<std::string>());
}

void to_json(json& j, const FamilySpec& s) { j = s.name(); }

void from_json(const json& j, FamilySpec& s) { s = FamilySpec::parse(j.get<std::string>()); }

void to_json(json& j, const CodeFamily& f) {
    json words = json::array();
    for (const auto& w : f.words) words.push_back(w);
    j = json{{"family", f.spec}, {"max_len", f.max_len}, {"listed", f.listed}, {"counts", counts_to_json(f.counts)},
             {"words", words}};
}

void from_json(const json& j, CodeFamily& f) {
    f.spec = j.at("family").get<FamilySpec>();
    f.max_len = j.at("max_len").get<std::size_t>();
    f.listed = j.at("listed").get<bool>();
    f.counts = counts_from_json(j.at("counts"));
    f.words = j.at("words").get<std::vector<Word>>();
}

void to_json(json& j, const SumEstimate& s) {
    j = json{{"truncated", s.truncated}, {"tail", s.tail}, {"tail_valid", s.tail_valid}, {"value", s.value()}};
}

void from_json(const json& j, SumEstimate& s) {
    s.truncated = j.at("truncated").get<double>();
    s.tail = j.at("tail").get<double>();
    s.tail_valid = j.at("tail_valid").get<bool>();
}

void to_json(json& j, const CodeStatistics& s) {
    j = json{{"kraft", s.kraft}, {"average_length", s.average_length}, {"gcd", s.gcd},
             {"messages", counts_to_json(s.messages)}, {"max_message_ratio", s.max_message_ratio}};
}

void from_json(const json& j, CodeStatistics& s) {
    s.kraft = j.at("kraft").get<SumEstimate>();
    s.average_length = j.at("average_length").get<SumEstimate>();
    s.gcd = j.at("gcd").get<long>();
    s.messages = counts_from_json(j.at("messages"));
    s.max_message_ratio = j.at("max_message_ratio").get<double>();
}

void to_json(json& j, const Block& b) { j = json{{"q", b.q}, {"p", b.p}, {"level", b.level}}; }

void from_json(const json& j, Block& b) {
    b.q = j.at("q").get<std::size_t>();
    b.p = j.at("p").get<std::size_t>();
    b.level = j.at("level").get<int>();
}

void to_json(json& j, const Decomposition& d) { j = json{{"horizon", d.horizon}, {"blocks", d.blocks}}; }

void from_json(const json& j, Decomposition& d) {
    d.horizon = j.at("horizon").get<std::size_t>();
    d.blocks = j.at("blocks").get<std::vector<Block>>();
}

void to_json(json& j, const SeriesReport& r) {
    j = json{{"lhs", counts_to_json(r.lhs)}, {"rhs", counts_to_json(r.rhs)}, {"equal", r.equal},
             {"all_equal", r.all_equal}, {"factors", r.factors}};
}

void from_json(const json& j, SeriesReport& r) {
    r.lhs = counts_from_json(j.at("lhs"));
    r.rhs = counts_from_json(j.at("rhs"));
    r.equal = j.at("equal").get<std::vector<bool>>();
    r.all_equal = j.at("all_equal").get<bool>();
    r.factors = j.at("factors").get<std::vector<std::string>>();
}

void to_json(json& j, const Classification& c) {
    j = json{{"coded", c.coded}, {"level", c.level}, {"boundary", c.boundary}, {"description", c.describe()}};
}

void from_json(const json& j, Classification& c) {
    c.coded = j.at("coded").get<bool>();
    c.level = j.at("level").get<int>();
    c.boundary = j.at("boundary").get<bool>();
}

void to_json(json& j, const CylinderMeasure& m) {
    j = json{{"value", m.value},           {"error", m.error},
             {"in_code", m.in_code},       {"in_support", m.in_support},
             {"intransitive", m.intransitive}, {"method", m.method},
             {"automaton_value", m.automaton_value}};
}

void from_json(const json& j, CylinderMeasure& m) {
    m.value = j.at("value").get<double>();
    m.error = j.at("error").get<double>();
    m.in_code = j.at("in_code").get<bool>();
    m.in_support = j.at("in_support").get<bool>();
    m.intransitive = j.at("intransitive").get<bool>();
    m.method = j.at("method").get<std::string>();
    m.automaton_value = j.at("automaton_value").get<double>();
}

void to_json(json& j, const PatternMatch& p) {
    j = json{{"family", p.family}, {"pattern", p.pattern}, {"position", p.position}};
}

void from_json(const json& j, PatternMatch& p) {
    p.family = j.at("family").get<int>();
    p.pattern = j.at("pattern").get<Word>();
    p.position = j.at("position").get<std::size_t>();
}

void to_json(json& j, const IntransitiveResult& r) {
    j = json{{"intransitive", r.intransitive}, {"level", r.level}};
    j["match"] = r.match ? json(*r.match) : json(nullptr);
    j["automaton_factor"] = r.automaton_factor ? json(*r.automaton_factor) : json(nullptr);
}

void from_json(const json& j, IntransitiveResult& r) {
    r.intransitive = j.at("intransitive").get<bool>();
    r.level = j.at("level").get<int>();
    if (j.at("match").is_null()) r.match.reset();
    else r.match = j.at("match").get<PatternMatch>();
    if (j.at("automaton_factor").is_null()) r.automaton_factor.reset();
    else r.automaton_factor = j.at("automaton_factor").get<bool>();
}

void to_json(json& j, const QueryFrequency& q) {
    j = json{{"word", q.word},       {"analytic", q.analytic},
             {"empirical", q.empirical}, {"stderr_binomial", q.stderr_binomial},
             {"stderr_batch", q.stderr_batch}, {"hits", q.hits}};
}

void from_json(const json& j, QueryFrequency& q) {
    q.word = j.at("word").get<Word>();
    q.analytic = j.at("analytic").get<double>();
    q.empirical = j.at("empirical").get<double>();
    q.stderr_binomial = j.at("stderr_binomial").get<double>();
    q.stderr_batch = j.at("stderr_batch").get<double>();
    q.hits = j.at("hits").get<std::uint64_t>();
}

void to_json(json& j, const SimulationReport& r) {
    j = json{{"generator", r.generator}, {"seed", r.seed},     {"steps", r.steps},
             {"precision", r.precision}, {"reseeds", r.reseeds}, {"queries", r.queries},
             {"level", r.level},         {"support_fraction", r.support_fraction},
             {"closed_fraction", r.closed_fraction}};
}

void from_json(const json& j, SimulationReport& r) {
    r.generator = j.at("generator").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.steps = j.at("steps").get<std::uint64_t>();
    r.precision = j.at("precision").get<int>();
    r.reseeds = j.at("reseeds").get<std::uint64_t>();
    r.queries = j.at("queries").get<std::vector<QueryFrequency>>();
    r.level = j.at("level").get<int>();
    r.support_fraction = j.at("support_fraction").get<double>();
    r.closed_fraction = j.value("closed_fraction", -1.0);
}

} // namespace negbeta
