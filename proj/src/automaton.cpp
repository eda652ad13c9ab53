#include "negbeta/automaton.hpp"

#include "negbeta/errors.hpp"
#include "negbeta/ordering.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace negbeta {

namespace {

// Perron root and vectors of a nonnegative irreducible matrix by iterating A + I.
void perron(const std::vector<std::vector<int>>& delta, long double& radius, std::vector<long double>& left,
            std::vector<long double>& right) {
    std::size_t n = delta.size();
    right.assign(n, 1.0L);
    left.assign(n, 1.0L);
    long double lam = 0;
    for (int it = 0; it < 100000; ++it) {
        std::vector<long double> r2(right), l2(left);
        for (std::size_t s = 0; s < n; ++s)
            for (int t : delta[s])
                if (t >= 0) {
                    r2[s] += right[static_cast<std::size_t>(t)];
                    l2[static_cast<std::size_t>(t)] += left[s];
                }
        long double nr = *std::max_element(r2.begin(), r2.end());
        long double nl = *std::max_element(l2.begin(), l2.end());
        long double change = 0;
        for (std::size_t s = 0; s < n; ++s) {
            r2[s] /= nr;
            l2[s] /= nl;
            change = std::max(change, std::fabs(r2[s] - right[s]) + std::fabs(l2[s] - left[s]));
        }
        right.swap(r2);
        left.swap(l2);
        lam = nr - 1;
        if (change < 1e-18L) break;
    }
    radius = lam;
    long double dotp = 0;
    for (std::size_t s = 0; s < n; ++s) dotp += left[s] * right[s];
    for (auto& v : left) v /= dotp;
}

} // namespace

SupportAutomaton SupportAutomaton::build(const DigitSequence& d) {
    SupportAutomaton a;
    a.d_ = d;
    a.alphabet_ = d.at(1) + 1;
    int tails = static_cast<int>(d.preperiod.size() + d.period.size());
    auto norm = [&](int k) {
        int pre = static_cast<int>(d.preperiod.size());
        int per = static_cast<int>(d.period.size());
        return k < tails ? k : pre + (k - pre) % per;
    };
    // cmp[i][j] > 0 when tail i is larger than tail j in the alternating order.
    std::vector<std::vector<int>> cmp(static_cast<std::size_t>(tails), std::vector<int>(static_cast<std::size_t>(tails)));
    for (int i = 0; i < tails; ++i)
        for (int j = 0; j < tails; ++j) {
            Relation r = alt_compare(d.shifted(static_cast<std::size_t>(i)), d.shifted(static_cast<std::size_t>(j)), -1).relation;
            cmp[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = r == Relation::greater ? 1 : r == Relation::less ? -1 : 0;
        }
    auto first = [&](int k) { return d.at(static_cast<std::size_t>(k) + 1); };

    std::map<std::pair<int, int>, int> index;
    a.states_.push_back({0, kNone});
    index[{0, kNone}] = 0;
    for (std::size_t s = 0; s < a.states_.size(); ++s) {
        State st = a.states_[s];
        std::vector<int> row(static_cast<std::size_t>(a.alphabet_), -1);
        for (int x = 0; x < a.alphabet_; ++x) {
            if (x > first(st.lower)) continue;
            if (st.upper != kNone && x < first(st.upper)) continue;
            State nx;
            nx.upper = x == first(st.lower) ? norm(st.lower + 1) : kNone;
            nx.lower = 0;
            if (st.upper != kNone && x == first(st.upper)) {
                int cand = norm(st.upper + 1);
                if (cmp[static_cast<std::size_t>(cand)][0] > 0) nx.lower = cand;
            }
            auto key = std::make_pair(nx.lower, nx.upper);
            auto it = index.find(key);
            int id;
            if (it == index.end()) {
                id = static_cast<int>(a.states_.size());
                index[key] = id;
                a.states_.push_back(nx);
            } else {
                id = it->second;
            }
            row[static_cast<std::size_t>(x)] = id;
        }
        a.delta_.push_back(row);
    }

    // Strongly connected components (Tarjan).
    std::size_t n = a.states_.size();
    std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on(n, 0);
    std::vector<int> stack;
    int counter = 0, ncomp = 0;
    std::function<void(int)> strong = [&](int v) {
        idx[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
        stack.push_back(v);
        on[static_cast<std::size_t>(v)] = 1;
        for (int w : a.delta_[static_cast<std::size_t>(v)]) {
            if (w < 0) continue;
            if (idx[static_cast<std::size_t>(w)] < 0) {
                strong(w);
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
            } else if (on[static_cast<std::size_t>(w)]) {
                low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], idx[static_cast<std::size_t>(w)]);
            }
        }
        if (low[static_cast<std::size_t>(v)] == idx[static_cast<std::size_t>(v)]) {
            for (;;) {
                int w = stack.back();
                stack.pop_back();
                on[static_cast<std::size_t>(w)] = 0;
                comp[static_cast<std::size_t>(w)] = ncomp;
                if (w == v) break;
            }
            ++ncomp;
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (idx[v] < 0) strong(static_cast<int>(v));

    long double best = -1;
    int best_comp = -1;
    for (int c = 0; c < ncomp; ++c) {
        std::vector<int> members;
        for (std::size_t v = 0; v < n; ++v)
            if (comp[v] == c) members.push_back(static_cast<int>(v));
        std::map<int, int> local;
        for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = static_cast<int>(i);
        std::vector<std::vector<int>> sub(members.size(), std::vector<int>(static_cast<std::size_t>(a.alphabet_), -1));
        bool has_edge = false;
        for (std::size_t i = 0; i < members.size(); ++i)
            for (int x = 0; x < a.alphabet_; ++x) {
                int t = a.delta_[static_cast<std::size_t>(members[i])][static_cast<std::size_t>(x)];
                if (t >= 0 && comp[static_cast<std::size_t>(t)] == c) {
                    sub[i][static_cast<std::size_t>(x)] = local[t];
                    has_edge = true;
                }
            }
        if (!has_edge) continue;
        long double rad;
        std::vector<long double> l, r;
        perron(sub, rad, l, r);
        if (rad > best + 1e-12L) {
            best = rad;
            best_comp = c;
        }
    }
    if (best_comp < 0) throw NumericError("follower automaton has no cycle");
    a.in_support_.assign(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        if (comp[v] == best_comp) {
            a.support_.push_back(static_cast<int>(v));
            a.in_support_[v] = 1;
        }
    a.radius_ = static_cast<double>(best);

    // Moore refinement of the support component with a sink for missing moves.
    std::vector<int> cls(n, 0);
    std::size_t nclasses = 1;
    for (;;) {
        std::map<std::vector<int>, int> sig;
        std::vector<int> next(n, -1);
        for (int v : a.support_) {
            std::vector<int> key{cls[static_cast<std::size_t>(v)]};
            for (int x = 0; x < a.alphabet_; ++x) {
                int t = a.delta_[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)];
                key.push_back(t >= 0 && a.in_support_[static_cast<std::size_t>(t)] ? cls[static_cast<std::size_t>(t)] : -1);
            }
            auto it = sig.find(key);
            if (it == sig.end()) it = sig.emplace(key, static_cast<int>(sig.size())).first;
            next[static_cast<std::size_t>(v)] = it->second;
        }
        std::size_t count = sig.size();
        cls = next;
        if (count == nclasses) break;
        nclasses = count;
    }
    // Renumber classes in order of first appearance.
    std::map<int, int> order;
    for (int v : a.support_) order.emplace(cls[static_cast<std::size_t>(v)], static_cast<int>(order.size()));
    a.minimal_.delta.assign(order.size(), std::vector<int>(static_cast<std::size_t>(a.alphabet_), -1));
    for (int v : a.support_) {
        int c = order[cls[static_cast<std::size_t>(v)]];
        for (int x = 0; x < a.alphabet_; ++x) {
            int t = a.delta_[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)];
            if (t >= 0 && a.in_support_[static_cast<std::size_t>(t)])
                a.minimal_.delta[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = order[cls[static_cast<std::size_t>(t)]];
        }
    }
    perron(a.minimal_.delta, a.minimal_.radius, a.minimal_.left, a.minimal_.right);
    return a;
}

bool SupportAutomaton::accepts(const Word& w) const {
    int s = 0;
    for (int x : w) {
        if (x < 0 || x >= alphabet_) return false;
        s = delta_[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)];
        if (s < 0) return false;
    }
    return true;
}

bool SupportAutomaton::accepts_factor(const Word& w) const {
    std::vector<char> cur(in_support_);
    for (int x : w) {
        if (x < 0 || x >= alphabet_) return false;
        std::vector<char> nxt(states_.size(), 0);
        bool any = false;
        for (std::size_t s = 0; s < states_.size(); ++s) {
            if (!cur[s]) continue;
            int t = delta_[s][static_cast<std::size_t>(x)];
            if (t >= 0 && in_support_[static_cast<std::size_t>(t)]) {
                nxt[static_cast<std::size_t>(t)] = 1;
                any = true;
            }
        }
        if (!any) return false;
        cur.swap(nxt);
    }
    return true;
}

long double SupportAutomaton::Minimal::cylinder(const Word& w) const {
    long double total = 0;
    for (std::size_t s = 0; s < delta.size(); ++s) {
        int t = static_cast<int>(s);
        for (int x : w) {
            if (x < 0 || static_cast<std::size_t>(x) >= delta[static_cast<std::size_t>(t)].size()) {
                t = -1;
                break;
            }
            t = delta[static_cast<std::size_t>(t)][static_cast<std::size_t>(x)];
            if (t < 0) break;
        }
        if (t >= 0) total += left[s] * right[static_cast<std::size_t>(t)];
    }
    return total / std::pow(radius, static_cast<long double>(w.size()));
}

std::string SupportAutomaton::Minimal::dot(const std::string& name) const {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < delta.size(); ++s) os << "  q" << s << (s == 0 ? " [shape=doublecircle];\n" : " [shape=circle];\n");
    for (std::size_t s = 0; s < delta.size(); ++s)
        for (std::size_t x = 0; x < delta[s].size(); ++x)
            if (delta[s][x] >= 0) os << "  q" << s << " -> q" << delta[s][x] << " [label=\"" << x << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string SupportAutomaton::dot(const std::string& name) const {
    std::ostringstream os;
    os << "digraph " << name << " {\n  rankdir=LR;\n";
    for (std::size_t s = 0; s < states_.size(); ++s) {
        os << "  q" << s << " [shape=" << (s == 0 ? "doublecircle" : "circle") << ",label=\"L" << states_[s].lower;
        if (states_[s].upper != kNone) os << "/U" << states_[s].upper;
        os << "\"" << (in_support_[s] ? ",style=bold" : ",style=dashed") << "];\n";
    }
    for (std::size_t s = 0; s < states_.size(); ++s)
        for (std::size_t x = 0; x < delta_[s].size(); ++x)
            if (delta_[s][x] >= 0) os << "  q" << s << " -> q" << delta_[s][x] << " [label=\"" << x << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace negbeta
