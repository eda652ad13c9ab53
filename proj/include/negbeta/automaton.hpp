#pragma once
#include "negbeta/word.hpp"

#include <string>
#include <vector>

namespace negbeta {

// Follower automaton of a negative shift with eventually periodic lower sequence d.
// A state holds the strongest active lower tail and the weakest active upper tail.
class SupportAutomaton {
public:
    static constexpr int kNone = -1;

    struct State {
        int lower = 0;        // index k of the tail sigma^k d
        int upper = kNone;
    };

    static SupportAutomaton build(const DigitSequence& d);

    int alphabet() const { return alphabet_; }
    std::size_t size() const { return states_.size(); }
    const State& state(std::size_t i) const { return states_[i]; }
    int next(std::size_t s, int digit) const { return delta_[s][static_cast<std::size_t>(digit)]; }

    // Admissible (left-unconstrained) words: paths from the initial state 0.
    bool accepts(const Word& w) const;
    // Factors of the support: paths inside the component of maximal spectral radius.
    bool accepts_factor(const Word& w) const;

    const std::vector<int>& support_states() const { return support_; }
    double spectral_radius() const { return radius_; }

    // Minimized support component (Moore refinement), deterministic with partial transitions.
    struct Minimal {
        std::vector<std::vector<int>> delta; // state x digit -> state or -1
        std::vector<long double> left, right; // Perron vectors, left.right normalized to 1
        long double radius = 0;
        std::size_t size() const { return delta.size(); }
        // Maximal-entropy measure of the cylinder [w].
        long double cylinder(const Word& w) const;
        std::string dot(const std::string& name = "support") const;
    };
    const Minimal& minimal() const { return minimal_; }

    std::string dot(const std::string& name = "follower") const;

private:
    DigitSequence d_;
    int alphabet_ = 0;
    std::vector<State> states_;
    std::vector<std::vector<int>> delta_;
    std::vector<int> support_;
    std::vector<char> in_support_;
    double radius_ = 0;
    Minimal minimal_;
};

} // namespace negbeta
