#include "negbeta/word.hpp"

#include "negbeta/errors.hpp"

#include <algorithm>
#include <sstream>

namespace negbeta {

Word parse_word(const std::string& text) {
    Word w;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        auto b = item.find_first_not_of(" \t");
        auto e = item.find_last_not_of(" \t");
        if (b == std::string::npos) {
            if (text.find_first_not_of(" \t,") == std::string::npos) continue;
            throw InputError("empty digit in word '" + text + "'");
        }
        item = item.substr(b, e - b + 1);
        if (!std::all_of(item.begin(), item.end(), [](char c) { return c >= '0' && c <= '9'; }))
            throw InputError("bad digit '" + item + "' in word '" + text + "'");
        w.push_back(std::stoi(item));
    }
    return w;
}

std::string format_word(const Word& w) {
    bool small = std::all_of(w.begin(), w.end(), [](int d) { return d >= 0 && d < 10; });
    if (!small) return format_word_csv(w);
    std::string s;
    for (int d : w) s.push_back(static_cast<char>('0' + d));
    return s;
}

std::string format_word_csv(const Word& w) {
    std::string s;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s.push_back(',');
        s += std::to_string(w[i]);
    }
    return s;
}

Word concat(const Word& a, const Word& b) {
    Word r = a;
    r.insert(r.end(), b.begin(), b.end());
    return r;
}

Word repeat(const Word& w, std::size_t times) {
    Word r;
    r.reserve(w.size() * times);
    for (std::size_t i = 0; i < times; ++i) r.insert(r.end(), w.begin(), w.end());
    return r;
}

bool is_prefix(const Word& p, const Word& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

DigitSequence DigitSequence::make(Word pre, Word per) {
    if (per.empty()) throw InputError("digit sequence needs a nonempty period");
    // Primitive period.
    std::size_t n = per.size();
    for (std::size_t q = 1; q < n; ++q) {
        if (n % q) continue;
        bool ok = true;
        for (std::size_t i = q; i < n && ok; ++i) ok = per[i] == per[i - q];
        if (ok) {
            per.resize(q);
            break;
        }
    }
    // Roll the period back into the preperiod while possible.
    while (!pre.empty() && pre.back() == per.back()) {
        std::rotate(per.rbegin(), per.rbegin() + 1, per.rend());
        pre.pop_back();
    }
    return DigitSequence{std::move(pre), std::move(per)};
}

int DigitSequence::at(std::size_t k) const {
    if (k == 0) return 0;
    if (k <= preperiod.size()) return preperiod[k - 1];
    return period[(k - preperiod.size() - 1) % period.size()];
}

Word DigitSequence::prefix(std::size_t n) const {
    Word w(n);
    for (std::size_t k = 1; k <= n; ++k) w[k - 1] = at(k);
    return w;
}

DigitSequence DigitSequence::shifted(std::size_t n) const {
    if (n <= preperiod.size()) {
        return make(Word(preperiod.begin() + static_cast<long>(n), preperiod.end()), period);
    }
    std::size_t r = (n - preperiod.size()) % period.size();
    Word per(period.begin() + static_cast<long>(r), period.end());
    per.insert(per.end(), period.begin(), period.begin() + static_cast<long>(r));
    return make({}, per);
}

std::string DigitSequence::str() const {
    return format_word(preperiod) + "(" + format_word(period) + ")";
}

} // namespace negbeta
