#include "negbeta/measure.hpp"

#include "negbeta/errors.hpp"
#include "negbeta/numeration.hpp"
#include "negbeta/ordering.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <thread>

namespace negbeta {

namespace {

CodeFamily golden_code(std::size_t max_len) {
    CodeFamily f;
    f.spec.kind = FamilyKind::C_beta;
    f.words = {{1}, {0, 0}};
    f.max_len = max_len;
    f.counts.assign(max_len + 1, 0);
    f.counts[1] = 1;
    if (max_len >= 2) f.counts[2] = 1;
    return f;
}

bool passes(const CodeStatistics& s, double tol) {
    return s.kraft.tail_valid && std::fabs(s.kraft.value() - 1.0) <= tol;
}

} // namespace

SupportCode support_code(const Base& base, std::size_t max_len, double kraft_tol) {
    if (base.sign() > 0) throw InputError("support codes are defined for beta < -1");
    SupportCode sc;
    sc.classification = classify_interval(base);
    sc.boundary = sc.classification.boundary;
    sc.abs_beta = std::fabs(base.approx());
    long double ab = std::fabs(base.approx_ld());
    Shift shift = Shift::from_base(base);
    auto finish = [&](CodeFamily f, const std::string& label) {
        sc.code = std::move(f);
        sc.label = label;
        sc.stats = code_statistics(sc.code.counts, ab);
        sc.kraft_ok = passes(sc.stats, kraft_tol);
        return sc;
    };
    if (sc.classification.coded) {
        if (sc.boundary) {
            sc.candidates = {"{1,00}"};
            return finish(golden_code(max_len), "{1,00}");
        }
        sc.candidates = {"C_beta"};
        return finish(enumerate_family(shift, FamilySpec{FamilyKind::C_beta, 0}, max_len), "C_beta");
    }
    int n = sc.classification.level;
    std::vector<int> levels = {n};
    if (sc.boundary) levels.push_back(n + 1);
    std::optional<SupportCode> first;
    for (int k : levels) {
        std::string label = "Delta_" + std::to_string(k);
        sc.candidates.push_back(label);
        CodeFamily f = enumerate_family(shift, FamilySpec{FamilyKind::Delta, k}, max_len);
        SupportCode cand = finish(std::move(f), label);
        if (cand.kraft_ok) return cand;
        if (!first) first = cand;
    }
    first->candidates = sc.candidates;
    return *first;
}

namespace {

// Trie over the listed code words with subtree weights sum |beta|^-l.
struct Trie {
    struct Node {
        std::map<int, int> child;
        long double subtree = 0;
        long double terminal = 0; // weight when a code word ends here
    };
    std::vector<Node> nodes{1};

    void insert(const Word& w, long double weight) {
        int cur = 0;
        nodes[0].subtree += weight;
        for (int a : w) {
            auto it = nodes[static_cast<std::size_t>(cur)].child.find(a);
            int nxt;
            if (it == nodes[static_cast<std::size_t>(cur)].child.end()) {
                nxt = static_cast<int>(nodes.size());
                nodes[static_cast<std::size_t>(cur)].child[a] = nxt;
                nodes.emplace_back();
            } else {
                nxt = it->second;
            }
            cur = nxt;
            nodes[static_cast<std::size_t>(cur)].subtree += weight;
        }
        nodes[static_cast<std::size_t>(cur)].terminal += weight;
    }

    // Sum over messages x_1..x_k covering `rest` exactly up to the word containing its last letter.
    long double cover(const Word& rest, std::size_t from) const {
        if (from >= rest.size()) return 1;
        long double total = 0;
        int cur = 0;
        for (std::size_t i = from; i < rest.size(); ++i) {
            auto it = nodes[static_cast<std::size_t>(cur)].child.find(rest[i]);
            if (it == nodes[static_cast<std::size_t>(cur)].child.end()) return total;
            cur = it->second;
            const Node& nd = nodes[static_cast<std::size_t>(cur)];
            if (i + 1 == rest.size()) return total + nd.subtree;
            if (nd.terminal > 0) total += nd.terminal * cover(rest, i + 1);
        }
        return total;
    }
};

bool contains_word(const std::vector<Word>& words, const Word& w) {
    return std::binary_search(words.begin(), words.end(), w, [](const Word& a, const Word& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
}

} // namespace

CylinderMeasure cylinder_measure(const CylinderQuery& query, const SupportCode& support, const Base& base) {
    const Word& w = query.word;
    if (w.empty()) throw InputError("cylinder word must be non-empty");
    Shift shift = Shift::from_base(base);
    if (!is_admissible(w, shift).admissible) throw InputError("cylinder word is not admissible");
    CylinderMeasure m;
    SupportAutomaton A = SupportAutomaton::build(shift.lower());
    m.in_support = A.accepts_factor(w);
    m.automaton_value = m.in_support ? static_cast<double>(A.minimal().cylinder(w)) : 0.0;
    if (!m.in_support) {
        m.intransitive = true;
        m.method = "automaton";
        return m;
    }
    long double ab = support.abs_beta;
    long double L = support.stats.average_length.value();
    if (!support.code.listed) {
        m.method = "automaton";
        m.value = m.automaton_value;
        return m;
    }
    if (contains_word(support.code.words, w)) {
        m.in_code = true;
        m.method = "code";
        m.value = static_cast<double>(std::pow(ab, -static_cast<long double>(w.size())) / L);
        m.error = m.value * support.stats.average_length.tail / static_cast<double>(L);
        return m;
    }
    Trie trie;
    for (const Word& x : support.code.words) trie.insert(x, std::pow(ab, -static_cast<long double>(x.size())));
    // The origin sits at offset i inside a code word x_0; the rest of w is covered by later words.
    long double total = 0;
    for (const Word& x : support.code.words) {
        long double wx = std::pow(ab, -static_cast<long double>(x.size()));
        for (std::size_t i = 0; i < x.size(); ++i) {
            std::size_t k = 0;
            while (k < w.size() && i + k < x.size() && x[i + k] == w[k]) ++k;
            if (k == w.size()) total += wx;
            else if (i + k == x.size()) total += wx * trie.cover(w, k);
        }
    }
    m.method = "completion";
    m.value = static_cast<double>(total / L);
    m.error = (support.stats.average_length.tail + static_cast<double>(w.size()) * support.stats.kraft.tail) /
                  static_cast<double>(L) +
              m.value * support.stats.average_length.tail / static_cast<double>(L);
    return m;
}

std::vector<PatternMatch> intransitive_patterns(int n, int k1) {
    std::vector<PatternMatch> out;
    if (n < 0) return out;
    auto add_suffixes = [&](int family, const Word& head, const Word& tail) {
        for (std::size_t i = 0; i < head.size(); ++i) {
            PatternMatch p;
            p.family = family;
            p.pattern = concat(Word(head.begin() + static_cast<long>(i), head.end()), tail);
            out.push_back(std::move(p));
        }
    };
    for (int m = 1; m <= n; ++m) add_suffixes(1, u_block(m - 2), concat(u_block(m - 1), u_block(m)));
    // At m = n the run of u_(n-1) is bounded by 2 k1, so a cube of it only works for k1 = 1.
    for (int m = 0; m <= n; ++m) {
        Word u = u_block(m - 1);
        std::size_t run = m == n ? static_cast<std::size_t>(2 * k1 + 1) : 3;
        add_suffixes(2, u, repeat(u, run));
    }
    for (int k = -1; k <= n - 1; ++k) {
        Word tail = u_block(k);
        for (int j = k + 1; j <= n - 2; ++j) tail = concat(tail, repeat(u_block(j), 2));
        tail = concat(tail, repeat(u_block(n - 1), static_cast<std::size_t>(2 * k1 + 1)));
        tail = concat(tail, u_block(n));
        add_suffixes(3, u_block(k), tail);
    }
    return out;
}

namespace {

int leading_exchanged_digit(const Base& base, int n) {
    SequenceResult d = characteristic_sequence(base, SeqMode::corrected, 1);
    if (d.periodic) return phi_decode(d.seq, n + 1).at(1);
    std::size_t len = 8 * u_block(n + 1).size() + 16;
    SequenceResult dp = characteristic_sequence(base, SeqMode::corrected, len);
    Word s = phi_decode(dp.prefix, n + 1, false);
    if (s.empty()) throw NotInImage("characteristic prefix does not decode");
    return s[0];
}

} // namespace

IntransitiveResult is_intransitive(const Word& word, const Base& base) {
    IntransitiveResult res;
    Classification c = classify_interval(base);
    try {
        Shift shift = Shift::from_base(base);
        res.automaton_factor = SupportAutomaton::build(shift.lower()).accepts_factor(word);
    } catch (const NotEventuallyPeriodic&) {
        res.automaton_factor.reset();
    }
    if (c.coded) return res;
    res.level = c.level;
    bool nonfactor = res.automaton_factor.has_value() && !*res.automaton_factor;
    int k1 = leading_exchanged_digit(base, c.level);
    for (const PatternMatch& p : intransitive_patterns(c.level, k1)) {
        auto it = std::search(word.begin(), word.end(), p.pattern.begin(), p.pattern.end());
        if (it != word.end()) {
            PatternMatch hit = p;
            hit.position = static_cast<std::size_t>(it - word.begin());
            res.intransitive = true;
            res.match = hit;
            return res;
        }
    }
    // The pattern list is sufficient but not exhaustive; the automaton settles the rest.
    res.intransitive = nonfactor;
    return res;
}

namespace {

using Span = std::pair<long double, long double>;

constexpr int kClosureCap = 256;

std::vector<Span> merge(std::vector<Span> v) {
    std::sort(v.begin(), v.end());
    std::vector<Span> out;
    for (const Span& s : v) {
        if (!out.empty() && s.first <= out.back().second) out.back().second = std::max(out.back().second, s.second);
        else out.push_back(s);
    }
    return out;
}

std::vector<Span> image(const std::vector<Span>& in, long double beta, long double l) {
    std::vector<Span> out;
    for (const Span& s : in) {
        long double y0 = std::min(beta * s.first, beta * s.second);
        long double y1 = std::max(beta * s.first, beta * s.second);
        long k0 = static_cast<long>(std::floor(y0 - l)), k1 = static_cast<long>(std::floor(y1 - l));
        for (long k = k0; k <= k1; ++k) {
            long double a = std::max(y0, l + k), b = std::min(y1, l + k + 1);
            if (a < b) out.push_back({a - k, b - k});
        }
    }
    return merge(out);
}

struct Mpfr {
    mpfr_t v;
    explicit Mpfr(int prec) { mpfr_init2(v, prec); }
    ~Mpfr() { mpfr_clear(v); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
};

} // namespace

SimulationReport orbit_simulate(const Base& base, std::uint64_t steps, std::uint64_t seed,
                                const std::vector<CylinderQuery>& queries, const SimulationOptions& opt) {
    if (steps < 100000) throw InputError("steps must be at least 100000");
    if (base.sign() > 0) throw InputError("orbit simulation is defined for beta < -1");
    SimulationReport rep;
    rep.seed = seed;
    rep.steps = steps;
    rep.precision = opt.precision;
    std::mt19937_64 rng(seed);

    const int prec = opt.precision;
    Interval enc = base.enclosure(static_cast<mpfr_prec_t>(prec + 16));
    Mpfr beta(prec), l(prec), r(prec), x(prec), y(prec), t(prec), eps(prec);
    mpfr_add(beta.v, enc.lo.get(), enc.hi.get(), MPFR_RNDN);
    mpfr_div_2ui(beta.v, beta.v, 1, MPFR_RNDN);
    mpfr_ui_sub(t.v, 1, beta.v, MPFR_RNDN);
    mpfr_div(l.v, beta.v, t.v, MPFR_RNDN);
    mpfr_add_ui(r.v, l.v, 1, MPFR_RNDN);
    mpfr_set_ui(eps.v, 1, MPFR_RNDN);
    mpfr_div_2ui(eps.v, eps.v, static_cast<unsigned long>(opt.perturbation_exponent), MPFR_RNDN);

    std::uniform_real_distribution<double> unif(0.0, 1.0);
    auto reseed = [&]() {
        mpfr_set_d(x.v, unif(rng), MPFR_RNDN);
        mpfr_add(x.v, x.v, l.v, MPFR_RNDN);
    };
    reseed();

    const long double beta_ld = mpfr_get_ld(beta.v, MPFR_RNDN);
    const long double l_ld = mpfr_get_ld(l.v, MPFR_RNDN);
    const int alphabet = static_cast<int>(std::floor(std::fabs(beta_ld))) + 1;

    // Rolling codes per query length.
    std::vector<std::size_t> lengths;
    for (const auto& q : queries) {
        if (q.word.empty()) throw InputError("query words must be non-empty");
        for (int a : q.word)
            if (a < 0 || a >= alphabet) throw InputError("query digit outside the alphabet");
        if (std::find(lengths.begin(), lengths.end(), q.word.size()) == lengths.end()) lengths.push_back(q.word.size());
    }
    std::size_t max_len = 0;
    for (auto k : lengths) max_len = std::max(max_len, k);
    if (static_cast<double>(max_len) * std::log2(static_cast<double>(alphabet)) > 62)
        throw InputError("query word too long for the rolling matcher");
    std::vector<std::uint64_t> modulus(max_len + 1, 1);
    for (std::size_t k = 1; k <= max_len; ++k) modulus[k] = modulus[k - 1] * static_cast<std::uint64_t>(alphabet);
    std::vector<std::uint64_t> target(queries.size());
    for (std::size_t i = 0; i < queries.size(); ++i) {
        std::uint64_t c = 0;
        for (int a : queries[i].word) c = c * static_cast<std::uint64_t>(alphabet) + static_cast<std::uint64_t>(a);
        target[i] = c;
    }

    std::vector<Span> support, closed;
    Classification cls;
    try {
        cls = classify_interval(base);
    } catch (const NumericError&) {
        cls.level = -1;
    }
    rep.level = cls.coded ? -1 : cls.level;
    if (rep.level >= 0) {
        Field F(base);
        long double tn = F.to_long_double(t_threshold(F, rep.level));
        std::vector<Span> cur = {{l_ld, tn}};
        std::vector<Span> all = cur;
        std::size_t K = u_block(rep.level).size();
        for (std::size_t k = 0; k < K; ++k) {
            cur = image(cur, beta_ld, l_ld);
            all.insert(all.end(), cur.begin(), cur.end());
        }
        support = merge(all);
        closed = support;
        for (int k = 0; k < kClosureCap; ++k) {
            cur = image(cur, beta_ld, l_ld);
            all.insert(all.end(), cur.begin(), cur.end());
            std::vector<Span> next = merge(all);
            if (next == closed) break;
            closed = std::move(next);
        }
    }
    auto inside_of = [](const std::vector<Span>& spans, long double v) {
        auto it = std::upper_bound(spans.begin(), spans.end(), Span{v, INFINITY});
        if (it == spans.begin()) return false;
        --it;
        return v >= it->first && v <= it->second;
    };

    const std::size_t batches = std::max<std::size_t>(1, opt.batches);
    const std::uint64_t batch_len = steps / batches;
    std::vector<std::uint64_t> hits(queries.size(), 0), batch_hits(queries.size(), 0);
    std::vector<std::vector<double>> batch_freq(queries.size());
    std::uint64_t rolling = 0, inside = 0, inside_closed = 0, batch_steps = 0;
    std::size_t seen = 0;
    const std::uint64_t top = modulus[max_len];

    for (std::uint64_t s = 0; s < steps; ++s) {
        if (!support.empty()) {
            const long double v = mpfr_get_ld(x.v, MPFR_RNDN);
            if (inside_of(support, v)) ++inside;
            if (inside_of(closed, v)) ++inside_closed;
        }
        mpfr_mul(y.v, beta.v, x.v, MPFR_RNDN);
        mpfr_sub(t.v, y.v, l.v, MPFR_RNDN);
        mpfr_floor(t.v, t.v);
        long digit = mpfr_get_si(t.v, MPFR_RNDN);
        mpfr_sub(x.v, y.v, t.v, MPFR_RNDN);
        if (rng() & 1) mpfr_add(x.v, x.v, eps.v, MPFR_RNDN);
        else mpfr_sub(x.v, x.v, eps.v, MPFR_RNDN);
        if (mpfr_less_p(x.v, l.v) || !mpfr_less_p(x.v, r.v) || digit < 0 || digit >= alphabet) {
            ++rep.reseeds;
            reseed();
            seen = 0;
            continue;
        }
        if (max_len > 0) {
            rolling = (rolling * static_cast<std::uint64_t>(alphabet) + static_cast<std::uint64_t>(digit)) % top;
            if (seen < max_len) ++seen;
            for (std::size_t i = 0; i < queries.size(); ++i) {
                std::size_t k = queries[i].word.size();
                if (seen >= k && rolling % modulus[k] == target[i]) {
                    ++hits[i];
                    ++batch_hits[i];
                }
            }
        }
        if (++batch_steps == batch_len && batch_len > 0) {
            for (std::size_t i = 0; i < queries.size(); ++i) {
                batch_freq[i].push_back(static_cast<double>(batch_hits[i]) / static_cast<double>(batch_len));
                batch_hits[i] = 0;
            }
            batch_steps = 0;
        }
    }
    if (!support.empty()) {
        rep.support_fraction = static_cast<double>(inside) / static_cast<double>(steps);
        rep.closed_fraction = static_cast<double>(inside_closed) / static_cast<double>(steps);
    }

    std::optional<SupportAutomaton> A;
    if (opt.analytic && !queries.empty()) {
        try {
            A = SupportAutomaton::build(Shift::from_base(base).lower());
        } catch (const std::exception&) {
            A.reset();
        }
    }
    for (std::size_t i = 0; i < queries.size(); ++i) {
        QueryFrequency q;
        q.word = queries[i].word;
        q.hits = hits[i];
        q.empirical = static_cast<double>(hits[i]) / static_cast<double>(steps);
        q.stderr_binomial = std::sqrt(q.empirical * (1 - q.empirical) / static_cast<double>(steps));
        const auto& bf = batch_freq[i];
        if (bf.size() > 1) {
            double mean = 0, var = 0;
            for (double f : bf) mean += f;
            mean /= static_cast<double>(bf.size());
            for (double f : bf) var += (f - mean) * (f - mean);
            var /= static_cast<double>(bf.size() - 1);
            q.stderr_batch = std::sqrt(var / static_cast<double>(bf.size()));
        }
        if (A) q.analytic = A->accepts_factor(q.word) ? static_cast<double>(A->minimal().cylinder(q.word)) : 0.0;
        rep.queries.push_back(std::move(q));
    }
    return rep;
}

SimulationReport merge_reports(const std::vector<SimulationReport>& parts) {
    if (parts.empty()) throw InputError("nothing to merge");
    SimulationReport out = parts.front();
    if (parts.size() == 1) return out;
    std::uint64_t total = 0;
    for (const auto& p : parts) total += p.steps;
    out.steps = total;
    out.reseeds = 0;
    double frac = 0, closed = 0;
    for (const auto& p : parts) {
        out.reseeds += p.reseeds;
        frac += p.support_fraction * static_cast<double>(p.steps);
        closed += p.closed_fraction * static_cast<double>(p.steps);
    }
    out.support_fraction = out.support_fraction < 0 ? -1 : frac / static_cast<double>(total);
    out.closed_fraction = out.closed_fraction < 0 ? -1 : closed / static_cast<double>(total);
    for (std::size_t i = 0; i < out.queries.size(); ++i) {
        QueryFrequency& q = out.queries[i];
        q.hits = 0;
        double var_batch = 0;
        for (const auto& p : parts) {
            q.hits += p.queries[i].hits;
            double w = static_cast<double>(p.steps) / static_cast<double>(total);
            var_batch += w * w * p.queries[i].stderr_batch * p.queries[i].stderr_batch;
        }
        q.empirical = static_cast<double>(q.hits) / static_cast<double>(total);
        q.stderr_binomial = std::sqrt(q.empirical * (1 - q.empirical) / static_cast<double>(total));
        q.stderr_batch = std::sqrt(var_batch);
    }
    return out;
}

SimulationReport orbit_simulate_parallel(const Base& base, std::uint64_t steps, std::uint64_t seed,
                                         const std::vector<CylinderQuery>& queries, unsigned workers,
                                         const SimulationOptions& opt) {
    if (workers <= 1) return orbit_simulate(base, steps, seed, queries, opt);
    std::vector<SimulationReport> parts(workers);
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
        std::uint64_t share = steps / workers + (w < steps % workers ? 1 : 0);
        pool.emplace_back([&, w, share]() {
            try {
                parts[w] = orbit_simulate(base, share, seed + w, queries, opt);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    SimulationReport out = merge_reports(parts);
    out.seed = seed;
    return out;
}

} // namespace negbeta
