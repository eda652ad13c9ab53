#pragma once
#include "negbeta/base.hpp"
#include "negbeta/field.hpp"
#include "negbeta/word.hpp"

#include <functional>
#include <memory>

namespace negbeta {

struct Endpoints {
    FieldElement l;
    FieldElement r;
};

// l = beta/(1-beta), r = l + 1 for beta < -1; l = 0, r = 1 for beta > 1.
Endpoints endpoints(const Field& F);

struct Step {
    long digit;
    FieldElement next;
};

// One application of T(x) = beta*x - floor(beta*x - l).
Step tbeta_step(const Field& F, const FieldElement& x, const FieldElement& l);

// Digits of the T-orbit of a start point, produced lazily. Approximate bases
// restart at doubled precision when a floor cannot be decided, up to the cap.
class DigitStream {
public:
    using Start = std::function<FieldElement(const Field&)>;
    DigitStream(Base base, Start start);

    int next();
    const Word& digits() const { return digits_; }
    mpfr_prec_t precision() const { return prec_; }

private:
    Base base_;
    Start start_;
    mpfr_prec_t prec_;
    std::unique_ptr<Field> field_;
    FieldElement x_, l_;
    Word digits_;

    void restart(mpfr_prec_t prec);
};

struct Expansion {
    long shift = 0;
    Word digits;
};

// Smallest n >= 0 with x/beta^n in [l, r), then the first n_digits orbit digits.
Expansion expand(const Base& base, const mpq_class& x, std::size_t n_digits);

enum class SeqMode { raw, corrected };

struct SequenceResult {
    bool periodic = false;         // exact eventual period detected
    bool aperiodic_so_far = false; // exact backend hit the state cap
    DigitSequence seq;             // meaningful when periodic
    Word prefix;                   // first max_len digits
    mpfr_prec_t precision = 0;
};

inline constexpr std::size_t kDefaultStateCap = 1000000;

// Lower characteristic sequence d(l_beta, beta), optionally corrected for odd periods.
SequenceResult characteristic_sequence(const Base& base, SeqMode mode, std::size_t max_len,
                                       std::size_t state_cap = kDefaultStateCap);
// Upper sequence built from r*_1 = floor(beta*r - l) and the orbit of beta*r - r*_1.
SequenceResult upper_sequence(const Base& base, SeqMode mode, std::size_t max_len,
                              std::size_t state_cap = kDefaultStateCap);

// Odd-period correction of a raw lower sequence for negative bases; identity otherwise.
DigitSequence correct_lower(const DigitSequence& raw, int delta);

// sum x_k beta^-k.
FieldElement evaluate_f_beta(const Field& F, const Word& w);
FieldElement evaluate_f_beta(const Field& F, const DigitSequence& s);

} // namespace negbeta
