#include "negbeta/codes.hpp"

#include "negbeta/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

namespace negbeta {

int Decomposition::max_level() const {
    int m = 0;
    for (const auto& b : blocks) m = std::max(m, b.level);
    return m;
}

Decomposition decompose_characteristic(const DigitSequence& d, std::size_t horizon) {
    std::size_t offsets = d.preperiod.size() + d.period.size();
    for (std::size_t m = 1; m <= offsets; ++m)
        if (alt_compare(d.shifted(m), d, -1).relation == Relation::less)
            throw MalformedCharacteristic("sequence " + d.str() + " is not self-admissible at shift " +
                                          std::to_string(m));
    Decomposition dec;
    dec.horizon = horizon;
    std::size_t q = 3;
    for (;;) {
        if (q % 2 == 0) ++q;
        if (q + 1 > horizon) break;
        if (d.at(q + 1) == d.at(1)) {
            std::size_t p = 0;
            while (p < q && d.at(q + 1 + p) == d.at(1 + p)) ++p;
            if (p < q) {
                if (q + 1 + p > horizon) break;
                dec.blocks.push_back({q, p, 0});
                q = q + 1 + p;
                continue;
            }
        }
        q += 2;
    }
    for (auto& b : dec.blocks) {
        for (std::size_t j = 0; j < dec.blocks.size(); ++j) {
            if (b.p < dec.blocks[j].q) {
                b.level = static_cast<int>(j) + 1;
                break;
            }
        }
    }
    return dec;
}

std::string FamilySpec::name() const {
    switch (kind) {
    case FamilyKind::Gamma0: return "Gamma0";
    case FamilyKind::Gamma1: return "Gamma1";
    case FamilyKind::Delta00: return "Delta00";
    case FamilyKind::E: return "E";
    case FamilyKind::C_beta: return "C_beta";
    case FamilyKind::Delta: return "Delta_" + std::to_string(index);
    case FamilyKind::J: return "J_" + std::to_string(index);
    }
    return "?";
}

FamilySpec FamilySpec::parse(const std::string& t) {
    auto indexed = [&](const std::string& head, FamilyKind k) -> std::optional<FamilySpec> {
        for (const std::string& form : {head + "_", head + "(", head}) {
            if (t.rfind(form, 0) == 0 && t.size() > form.size()) {
                std::string rest = t.substr(form.size());
                if (!rest.empty() && rest.back() == ')') rest.pop_back();
                if (!rest.empty() && std::all_of(rest.begin(), rest.end(), ::isdigit))
                    return FamilySpec{k, std::stoi(rest)};
            }
        }
        return std::nullopt;
    };
    if (t == "Gamma0") return {FamilyKind::Gamma0, 0};
    if (t == "Gamma1") return {FamilyKind::Gamma1, 1};
    if (t == "Delta00") return {FamilyKind::Delta00, 0};
    if (t == "E") return {FamilyKind::E, 0};
    if (t == "C_beta" || t == "C") return {FamilyKind::C_beta, 0};
    if (auto s = indexed("Delta_i", FamilyKind::Delta)) return *s;
    if (auto s = indexed("Delta", FamilyKind::Delta)) return *s;
    if (auto s = indexed("J", FamilyKind::J)) return *s;
    throw InputError("unknown family '" + t + "' (Gamma0, Gamma1, Delta00, E, C_beta, Delta_<i>, J_<i>)");
}

bool has_property_c(const Word& x, const DigitSequence& d) {
    std::size_t n = x.size();
    for (std::size_t i = 0; i < n; ++i) {
        bool strict = false;
        for (std::size_t k = 0; i + k < n; ++k) {
            int a = d.at(k + 1), b = x[i + k];
            if (a != b) {
                long sgn = (k + 1) % 2 == 1 ? -1 : 1;
                if (sgn * (a - b) >= 0) return false;
                strict = true;
                break;
            }
        }
        if (!strict) return false;
    }
    return true;
}

bool is_prefix_code(const std::vector<Word>& words, std::pair<Word, Word>* witness) {
    std::vector<Word> sorted = words;
    std::sort(sorted.begin(), sorted.end());
    // In lexicographic order a word is immediately followed by its extensions.
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        if (sorted[i] != sorted[i + 1] && is_prefix(sorted[i], sorted[i + 1])) {
            if (witness) *witness = {sorted[i], sorted[i + 1]};
            return false;
        }
    }
    return true;
}

namespace {

bool len_lex(const Word& a, const Word& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
}

struct Builder {
    const Shift& shift;
    std::size_t max_len;
    std::size_t cap;
    Word dp;
    std::set<Word, decltype(&len_lex)> out{&len_lex};

    Builder(const Shift& s, std::size_t L, std::size_t c)
        : shift(s), max_len(L), cap(c), dp(s.lower().prefix(L + 1)) {}

    bool admissible(const Word& w) const {
        return is_admissible(w, dp, shift.upper().prefix(w.size()), shift.delta()).admissible;
    }
    // w d and w d_1 d are admissible sequences.
    bool extendable(const Word& w) const {
        const DigitSequence& d = shift.lower();
        DigitSequence a = DigitSequence::make(concat(w, d.preperiod), d.period);
        DigitSequence b = DigitSequence::make(concat(concat(w, {d.at(1)}), d.preperiod), d.period);
        return is_admissible(a, shift).admissible && is_admissible(b, shift).admissible;
    }
    void add(Word w) {
        out.insert(std::move(w));
        if (out.size() > cap) throw BudgetExceeded("family listing exceeds the word cap");
    }
    CodeFamily finish(FamilySpec spec) const {
        CodeFamily f;
        f.spec = spec;
        f.max_len = max_len;
        f.words.assign(out.begin(), out.end());
        f.counts.assign(max_len + 1, 0);
        for (const auto& w : f.words) f.counts[w.size()] += 1;
        return f;
    }
};

std::vector<Word> gamma0_words(const Shift& shift, std::size_t max_len) {
    const DigitSequence& d = shift.lower();
    Builder b(shift, max_len, kListCap);
    std::vector<Word> out;
    for (std::size_t n = 0; n < max_len; ++n) {
        Word base = d.prefix(n);
        if (!b.admissible(base)) break;
        for (int j = 0; j <= d.at(1); ++j) {
            Word y = concat(base, {j});
            if (b.admissible(y) && has_property_c(y, d)) out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end(), len_lex);
    return out;
}

std::vector<Word> delta00_words(const DigitSequence& d, const Decomposition& dec, std::size_t max_len) {
    std::vector<Word> out;
    std::size_t lo = 0;
    for (std::size_t i = 0; i <= dec.blocks.size(); ++i) {
        std::size_t hi = i < dec.blocks.size() ? dec.blocks[i].q : max_len + 1;
        for (std::size_t j = lo; j < std::min(hi, max_len + 1); ++j)
            if (j % 2 == 1) out.push_back(d.prefix(j));
        if (i < dec.blocks.size()) lo = dec.blocks[i].q + 1 + dec.blocks[i].p;
        if (lo > max_len) break;
    }
    return out;
}

std::vector<Word> delta_i_words(const Builder& b, const DigitSequence& d, const Decomposition& dec, int i,
                                std::size_t max_len) {
    const auto& B = dec.blocks;
    std::vector<Word> out;
    std::vector<std::size_t> seq;
    std::function<void(std::size_t)> rec = [&](std::size_t length) {
        const Block& last = B[seq.back()];
        if (last.level == i) {
            if (last.p < B[seq.front()].q) {
                Word w;
                for (auto t : seq) w = concat(w, d.prefix(B[t].q));
                if (b.admissible(w)) out.push_back(std::move(w));
            }
            return;
        }
        if (last.level < i) return;
        for (std::size_t t = 0; t < B.size(); ++t) {
            if (length + B[t].q <= max_len && last.p <= B[t].q) {
                seq.push_back(t);
                rec(length + B[t].q);
                seq.pop_back();
            }
        }
    };
    for (std::size_t t = 0; t < B.size(); ++t) {
        if (B[t].q <= max_len) {
            seq = {t};
            rec(B[t].q);
        }
    }
    return out;
}

// Concatenations of blocks (DFS, prefix-pruned by admissibility) each offered to visit().
void concatenations(const Builder& b, const std::vector<Word>& blocks, std::size_t max_len,
                    const std::function<void(const Word&)>& visit) {
    Word w;
    std::function<void()> rec = [&]() {
        visit(w);
        for (const auto& blk : blocks) {
            if (w.size() + blk.size() > max_len) continue;
            std::size_t n = w.size();
            w.insert(w.end(), blk.begin(), blk.end());
            if (b.admissible(w)) rec();
            w.resize(n);
        }
    };
    rec();
}

using MatchState = std::vector<int>;

std::string state_key(const MatchState& s) {
    std::string k;
    for (int v : s) k += std::to_string(v) + ",";
    return k;
}

// Admissible next digits from a suffix-match state and the resulting state.
template <class F>
void for_each_move(const DigitSequence& d, const MatchState& s, F&& f) {
    int top = d.at(1);
    for (int x = 0; x <= top; ++x) {
        bool ok = true;
        MatchState next;
        auto test = [&](int k) {
            int a = d.at(static_cast<std::size_t>(k) + 1);
            if (x == a) {
                next.push_back(k + 1);
                return;
            }
            long sgn = (k + 1) % 2 == 1 ? -1 : 1;
            if (sgn * (x - a) < 0) ok = false;
        };
        test(0);
        for (int k : s) {
            if (!ok) break;
            test(k);
        }
        if (ok) {
            std::sort(next.begin(), next.end());
            f(x, std::move(next));
        }
    }
}

} // namespace

std::vector<mpz_class> count_c_beta(const DigitSequence& d, std::size_t max_len) {
    std::vector<mpz_class> counts(max_len + 1, 0);
    std::unordered_map<std::string, std::pair<MatchState, mpz_class>> cur;
    cur[""] = {{}, 1};
    for (std::size_t n = 1; n <= max_len; ++n) {
        std::unordered_map<std::string, std::pair<MatchState, mpz_class>> nxt;
        for (auto& [key, entry] : cur) {
            for_each_move(d, entry.first, [&](int, MatchState s) {
                if (s.empty()) {
                    counts[n] += entry.second;
                    return;
                }
                std::string k = state_key(s);
                auto it = nxt.find(k);
                if (it == nxt.end()) nxt.emplace(k, std::make_pair(std::move(s), entry.second));
                else it->second.second += entry.second;
            });
        }
        cur = std::move(nxt);
    }
    return counts;
}

std::vector<mpz_class> count_words_dp(const DigitSequence& d, std::size_t n_max) {
    std::vector<mpz_class> h{1};
    std::unordered_map<std::string, std::pair<MatchState, mpz_class>> cur;
    cur[""] = {{}, 1};
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::unordered_map<std::string, std::pair<MatchState, mpz_class>> nxt;
        mpz_class total = 0;
        for (auto& [key, entry] : cur) {
            for_each_move(d, entry.first, [&](int, MatchState s) {
                total += entry.second;
                std::string k = state_key(s);
                auto it = nxt.find(k);
                if (it == nxt.end()) nxt.emplace(k, std::make_pair(std::move(s), entry.second));
                else it->second.second += entry.second;
            });
        }
        h.push_back(total);
        cur = std::move(nxt);
    }
    return h;
}

std::vector<Word> first_return_words(const DigitSequence& d, std::size_t max_len, std::size_t cap) {
    std::vector<Word> out;
    Word w;
    std::function<void(const MatchState&)> rec = [&](const MatchState& s) {
        if (w.size() == max_len) return;
        for_each_move(d, s, [&](int x, MatchState next) {
            w.push_back(x);
            if (next.empty()) {
                out.push_back(w);
                if (out.size() > cap) throw BudgetExceeded("first-return listing exceeds the word cap");
            } else {
                rec(next);
            }
            w.pop_back();
        });
    };
    rec({});
    std::sort(out.begin(), out.end(), len_lex);
    return out;
}

CodeFamily enumerate_family(const Shift& shift, FamilySpec spec, std::size_t max_len, std::size_t list_cap) {
    if (shift.delta() > 0) throw InputError("code families are defined for negative bases");
    const DigitSequence& d = shift.lower();
    Builder b(shift, max_len, list_cap);
    Decomposition dec = decompose_characteristic(d, 2 * max_len + 64);

    switch (spec.kind) {
    case FamilyKind::Gamma0:
        for (auto& w : gamma0_words(shift, max_len)) b.add(w);
        break;
    case FamilyKind::Delta00:
        for (auto& w : delta00_words(d, dec, max_len)) b.add(w);
        break;
    case FamilyKind::E:
        for (const auto& blk : dec.blocks)
            if (blk.q <= max_len) b.add(d.prefix(blk.q));
        break;
    case FamilyKind::J:
        for (const auto& blk : dec.blocks)
            if (blk.q <= max_len && blk.level == spec.index + 1) b.add(d.prefix(blk.q));
        break;
    case FamilyKind::C_beta: {
        std::vector<mpz_class> counts = count_c_beta(d, max_len);
        mpz_class total = std::accumulate(counts.begin(), counts.end(), mpz_class(0));
        if (total > list_cap) {
            CodeFamily f;
            f.spec = spec;
            f.max_len = max_len;
            f.counts = counts;
            f.listed = false;
            return f;
        }
        std::vector<Word> odd;
        for (std::size_t j = 1; j <= max_len; j += 2) odd.push_back(d.prefix(j));
        std::vector<Word> gamma = gamma0_words(shift, max_len);
        concatenations(b, odd, max_len, [&](const Word& x) {
            for (const auto& y : gamma) {
                if (x.size() + y.size() > max_len) continue;
                Word w = concat(x, y);
                if (b.admissible(w) && has_property_c(w, d)) b.add(std::move(w));
            }
        });
        break;
    }
    case FamilyKind::Delta: {
        if (spec.index < 0) throw InputError("family index must be non-negative");
        if (spec.index > 0) {
            for (auto& w : delta_i_words(b, d, dec, spec.index, max_len)) b.add(std::move(w));
            break;
        }
        std::vector<Word> ys = delta00_words(d, dec, max_len);
        Word w;
        std::function<void(std::optional<std::size_t>)> rec = [&](std::optional<std::size_t> lastp) {
            for (const auto& y : ys) {
                if (w.size() + y.size() > max_len) continue;
                if (lastp && !(*lastp < y.size())) continue;
                Word ww = concat(w, y);
                if (b.admissible(ww) && b.extendable(ww)) b.add(std::move(ww));
            }
            for (const auto& blk : dec.blocks) {
                if (w.size() + blk.q > max_len || (lastp && *lastp > blk.q)) continue;
                std::size_t n = w.size();
                Word B = d.prefix(blk.q);
                w.insert(w.end(), B.begin(), B.end());
                if (b.admissible(w)) rec(blk.p);
                w.resize(n);
            }
        };
        rec(std::nullopt);
        break;
    }
    case FamilyKind::Gamma1: {
        std::vector<Word> pieces;
        for (int k = 1; k <= dec.max_level(); ++k)
            for (auto& w : delta_i_words(b, d, dec, k, max_len)) pieces.push_back(std::move(w));
        std::vector<Word> tails;
        for (auto& y : gamma0_words(shift, max_len))
            if (y.size() >= 3) tails.push_back(y);
        concatenations(b, pieces, max_len, [&](const Word& x) {
            for (const auto& y : tails) {
                if (x.size() + y.size() > max_len) continue;
                Word w = concat(x, y);
                if (b.admissible(w) && has_property_c(w, d)) b.add(std::move(w));
            }
        });
        break;
    }
    }
    return b.finish(spec);
}

namespace {

std::vector<mpz_class> one_minus(const std::vector<mpz_class>& c, std::size_t degree) {
    std::vector<mpz_class> out(degree + 1, 0);
    out[0] = 1;
    for (std::size_t n = 1; n <= degree && n < c.size(); ++n) out[n] = -c[n];
    return out;
}

std::vector<mpz_class> series_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                                  std::size_t degree) {
    std::vector<mpz_class> c(degree + 1, 0);
    for (std::size_t i = 0; i < a.size() && i <= degree; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j <= degree; ++j) c[i + j] += a[i] * b[j];
    }
    return c;
}

} // namespace

SeriesReport verify_series_identity(const Shift& shift, std::size_t degree) {
    const DigitSequence& d = shift.lower();
    SeriesReport rep;
    rep.lhs.assign(degree + 1, 0);
    rep.lhs[0] = 1;
    for (std::size_t n = 1; n <= degree; ++n) {
        long v = static_cast<long>(n == 1 ? 0 : d.at(n - 1)) - d.at(n);
        rep.lhs[n] = n % 2 == 1 ? v : -v;
    }
    std::vector<mpz_class> rhs(degree + 1, 0);
    rhs[0] = 1;
    if (degree >= 1) rhs[1] = 1;
    CodeFamily c = enumerate_family(shift, {FamilyKind::C_beta, 0}, degree);
    rhs = series_mul(rhs, one_minus(c.counts, degree), degree);
    rep.factors.push_back(c.spec.name());
    Decomposition dec = decompose_characteristic(d, 2 * degree + 64);
    for (int k = 0; k <= dec.max_level(); ++k) {
        CodeFamily f = enumerate_family(shift, {FamilyKind::Delta, k}, degree);
        rhs = series_mul(rhs, one_minus(f.counts, degree), degree);
        rep.factors.push_back(f.spec.name());
    }
    rep.rhs = rhs;
    for (std::size_t n = 0; n <= degree; ++n) {
        rep.equal.push_back(rep.lhs[n] == rep.rhs[n]);
        if (!rep.equal.back()) rep.all_equal = false;
    }
    return rep;
}

SumEstimate geometric_sum(const std::vector<long double>& terms) {
    SumEstimate s;
    long double total = 0;
    std::vector<std::size_t> nz;
    for (std::size_t n = 0; n < terms.size(); ++n) {
        total += terms[n];
        if (terms[n] != 0) nz.push_back(n);
    }
    s.truncated = static_cast<double>(total);
    std::size_t N = terms.empty() ? 0 : terms.size() - 1;
    if (nz.empty() || nz.back() * 2 < N) {
        // No terms in the upper half of the range: treated as a finite family.
        s.tail = 0;
        s.tail_valid = true;
        return s;
    }
    if (nz.size() < 5) return s;
    std::size_t n1 = nz[nz.size() - 5], n5 = nz.back();
    long double rho = std::pow(terms[n5] / terms[n1], 1.0L / static_cast<long double>(n5 - n1));
    s.tail_valid = rho < 1;
    if (!s.tail_valid) return s;
    // Nonzero terms are spaced by the mean gap of the last five; the tail continues that lattice.
    long double gap = static_cast<long double>(n5 - n1) / 4.0L;
    long double q = std::pow(rho, gap);
    long double k0 = std::floor(static_cast<long double>(N - n5) / gap) + 1;
    long double tail = terms[n5] * std::pow(q, k0) / (1 - q);
    s.tail = static_cast<double>(tail);
    return s;
}

CodeStatistics code_statistics(const std::vector<mpz_class>& counts, long double abs_beta, std::size_t message_len) {
    CodeStatistics st;
    std::vector<long double> kraft(counts.size(), 0), avg(counts.size(), 0);
    long double z = 1.0L / abs_beta, zn = 1;
    for (std::size_t n = 0; n < counts.size(); ++n) {
        long double c = static_cast<long double>(counts[n].get_d());
        kraft[n] = c * zn;
        avg[n] = static_cast<long double>(n) * c * zn;
        if (counts[n] != 0) st.gcd = std::gcd(st.gcd, static_cast<long>(n));
        zn *= z;
    }
    st.kraft = geometric_sum(kraft);
    st.average_length = geometric_sum(avg);
    st.messages.assign(message_len + 1, 0);
    st.messages[0] = 1;
    long double scale = 1;
    for (std::size_t n = 1; n <= message_len; ++n) {
        for (std::size_t k = 1; k <= n && k < counts.size(); ++k) st.messages[n] += counts[k] * st.messages[n - k];
        scale *= abs_beta;
        double ratio = static_cast<double>(static_cast<long double>(st.messages[n].get_d()) / scale);
        st.max_message_ratio = std::max(st.max_message_ratio, ratio);
    }
    return st;
}

} // namespace negbeta
