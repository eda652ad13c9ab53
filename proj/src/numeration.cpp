#include "negbeta/numeration.hpp"

#include "negbeta/errors.hpp"

#include <unordered_map>

namespace negbeta {

Endpoints endpoints(const Field& F) {
    Endpoints e;
    if (F.base().sign() > 0) {
        e.l = F.from_int(0);
    } else {
        FieldElement b = F.beta();
        e.l = F.mul(b, F.inv(F.add_int(F.neg(b), 1)));
    }
    e.r = F.add_int(e.l, 1);
    return e;
}

Step tbeta_step(const Field& F, const FieldElement& x, const FieldElement& l) {
    FieldElement bx = F.mul_beta(x);
    long digit = F.floor(F.sub(bx, l));
    return {digit, F.add_int(bx, -digit)};
}

DigitStream::DigitStream(Base base, Start start)
    : base_(std::move(base)), start_(std::move(start)), prec_(base_.precision()) {
    restart(prec_);
}

void DigitStream::restart(mpfr_prec_t prec) {
    for (;;) {
        prec_ = prec;
        field_ = std::make_unique<Field>(base_, prec_);
        try {
            l_ = endpoints(*field_).l;
            x_ = start_(*field_);
            for (std::size_t i = 0; i < digits_.size(); ++i) {
                Step s = tbeta_step(*field_, x_, l_);
                if (s.digit != digits_[i]) throw NumericError("orbit replay disagrees after precision change");
                x_ = std::move(s.next);
            }
            return;
        } catch (const BoundaryAmbiguous&) {
            if (base_.exact() || prec * 2 > base_.precision_cap()) throw;
            prec *= 2;
        }
    }
}

int DigitStream::next() {
    for (;;) {
        try {
            Step s = tbeta_step(*field_, x_, l_);
            x_ = std::move(s.next);
            digits_.push_back(static_cast<int>(s.digit));
            return digits_.back();
        } catch (const BoundaryAmbiguous&) {
            if (base_.exact() || prec_ * 2 > base_.precision_cap()) throw;
            restart(prec_ * 2);
        }
    }
}

Expansion expand(const Base& base, const mpq_class& x, std::size_t n_digits) {
    long shift = -1;
    for (mpfr_prec_t prec = base.precision();; prec *= 2) {
        try {
            Field F(base, prec);
            Endpoints e = endpoints(F);
            FieldElement y = F.from_rational(x);
            FieldElement ib = F.inv(F.beta());
            for (long n = 0; n < 100000; ++n) {
                if (F.compare(y, e.l) >= 0 && F.compare(y, e.r) < 0) {
                    shift = n;
                    break;
                }
                y = F.mul(y, ib);
            }
            break;
        } catch (const BoundaryAmbiguous&) {
            if (base.exact() || prec * 2 > base.precision_cap()) throw;
        }
    }
    if (shift < 0) throw NoConvergence("no scaling of x falls in the fundamental interval");
    mpq_class xv = x;
    DigitStream ds(base, [xv, shift](const Field& F) {
        FieldElement y = F.from_rational(xv);
        FieldElement ib = F.inv(F.beta());
        for (long i = 0; i < shift; ++i) y = F.mul(y, ib);
        return y;
    });
    Expansion out;
    out.shift = shift;
    for (std::size_t i = 0; i < n_digits; ++i) ds.next();
    out.digits = ds.digits();
    return out;
}

DigitSequence correct_lower(const DigitSequence& raw, int delta) {
    if (delta > 0 || !raw.purely_periodic() || raw.period.size() % 2 == 0) return raw;
    Word per = raw.period;
    if (per.back() == 0) throw MalformedCharacteristic("odd period ending in 0 cannot be corrected");
    per.back() -= 1;
    per.push_back(0);
    return DigitSequence::make({}, per);
}

namespace {

struct OrbitResult {
    bool periodic = false;
    bool capped = false;
    DigitSequence seq;
    Word prefix;
    mpfr_prec_t precision = 0;
};

// Orbit digits of a start point; exact bases detect the eventual period.
OrbitResult orbit(const Base& base, const DigitStream::Start& start, std::size_t max_len, std::size_t cap) {
    OrbitResult out;
    if (!base.exact()) {
        DigitStream ds(base, start);
        for (std::size_t i = 0; i < max_len; ++i) ds.next();
        out.prefix = ds.digits();
        out.precision = ds.precision();
        return out;
    }
    Field F(base);
    FieldElement l = endpoints(F).l;
    FieldElement x = start(F);
    std::unordered_map<std::string, std::size_t> seen;
    Word digits;
    for (std::size_t i = 0;; ++i) {
        if (i < cap) {
            auto [it, fresh] = seen.emplace(F.key(x), i);
            if (!fresh) {
                std::size_t j = it->second;
                Word pre(digits.begin(), digits.begin() + static_cast<long>(j));
                Word per(digits.begin() + static_cast<long>(j), digits.end());
                out.periodic = true;
                out.seq = DigitSequence::make(pre, per);
                out.prefix = out.seq.prefix(max_len);
                return out;
            }
        } else if (digits.size() >= max_len) {
            out.capped = true;
            out.prefix.assign(digits.begin(), digits.begin() + static_cast<long>(max_len));
            return out;
        }
        Step s = tbeta_step(F, x, l);
        digits.push_back(static_cast<int>(s.digit));
        x = std::move(s.next);
    }
}

} // namespace

SequenceResult characteristic_sequence(const Base& base, SeqMode mode, std::size_t max_len, std::size_t state_cap) {
    OrbitResult o = orbit(base, [](const Field& F) { return endpoints(F).l; }, max_len, state_cap);
    SequenceResult r;
    r.periodic = o.periodic;
    r.aperiodic_so_far = o.capped;
    r.precision = o.precision;
    if (o.periodic) {
        r.seq = mode == SeqMode::corrected ? correct_lower(o.seq, base.sign()) : o.seq;
        r.prefix = r.seq.prefix(max_len);
    } else {
        r.prefix = o.prefix;
    }
    return r;
}

SequenceResult upper_sequence(const Base& base, SeqMode mode, std::size_t max_len, std::size_t state_cap) {
    if (base.sign() < 0) {
        // beta*r - l = 0 and beta*r = l, so r* = 0 d* and no correction applies.
        SequenceResult d = characteristic_sequence(base, SeqMode::raw, max_len > 0 ? max_len - 1 : 0, state_cap);
        d.prefix.insert(d.prefix.begin(), 0);
        d.prefix.resize(max_len);
        if (d.periodic) d.seq = DigitSequence::make(concat({0}, d.seq.preperiod), d.seq.period);
        return d;
    }
    // For beta > 1 the first digit is floor(beta) and the orbit continues from beta - floor(beta).
    long r1 = 0;
    for (mpfr_prec_t prec = base.precision();; prec *= 2) {
        try {
            Field F(base, prec);
            r1 = F.floor(F.beta());
            break;
        } catch (const BoundaryAmbiguous&) {
            if (base.exact() || prec * 2 > base.precision_cap()) throw;
        }
    }
    auto start = [r1](const Field& F) { return F.add_int(F.beta(), -r1); };
    OrbitResult o = orbit(base, start, max_len > 0 ? max_len - 1 : 0, state_cap);
    SequenceResult r;
    r.precision = o.precision;
    r.aperiodic_so_far = o.capped;
    if (!o.periodic) {
        r.prefix = concat({static_cast<int>(r1)}, o.prefix);
        r.prefix.resize(max_len);
        return r;
    }
    DigitSequence rstar = DigitSequence::make(concat({static_cast<int>(r1)}, o.seq.preperiod), o.seq.period);
    r.periodic = true;
    r.seq = rstar;
    if (mode == SeqMode::corrected) {
        // d* = 0^inf here, so a finite expansion r1..rn 0^inf becomes (r1..r(n-1) (rn - 1))^inf.
        if (rstar.period == Word{0} && !rstar.preperiod.empty()) {
            Word per = rstar.preperiod;
            per.back() -= 1;
            r.seq = DigitSequence::make({}, per);
        }
    }
    r.prefix = r.seq.prefix(max_len);
    return r;
}

FieldElement evaluate_f_beta(const Field& F, const Word& w) {
    FieldElement ib = F.inv(F.beta());
    FieldElement acc = F.from_int(0);
    for (std::size_t k = w.size(); k-- > 0;) acc = F.mul(F.add_int(acc, w[k]), ib);
    return acc;
}

FieldElement evaluate_f_beta(const Field& F, const DigitSequence& s) {
    FieldElement head = evaluate_f_beta(F, s.preperiod);
    FieldElement cyc = evaluate_f_beta(F, s.period);
    FieldElement ib = F.inv(F.beta());
    FieldElement bp = F.from_int(1);
    for (std::size_t i = 0; i < s.period.size(); ++i) bp = F.mul(bp, ib);
    FieldElement tail = F.mul(cyc, F.inv(F.sub(F.from_int(1), bp)));
    FieldElement scale = F.from_int(1);
    for (std::size_t i = 0; i < s.preperiod.size(); ++i) scale = F.mul(scale, ib);
    return F.add(head, F.mul(scale, tail));
}

} // namespace negbeta
