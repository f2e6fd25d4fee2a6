#include "stp/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "stp/rng.hpp"

namespace stp {

AlignedValue aligned_value(const BigInt& w, std::uint64_t n) {
    if (w < 1) throw std::domain_error("aligned_value: W must be positive");
    const std::uint64_t t = boost::multiprecision::msb(w);
    if (n > t) throw std::domain_error("aligned_value: n exceeds floor(log2 W)");

    AlignedValue out;
    out.w = w;
    out.n = n;
    out.t = t;
    const std::uint64_t shift = t - n;
    out.v = ((w + (pow2_big(shift) - 1)) >> shift) << shift;

    out.trailing_zeros = boost::multiprecision::lsb(out.v);
    std::uint64_t ones = 0;
    for (BigInt v = out.v; v != 0; v &= v - 1) ++ones;
    out.ones = ones;
    return out;
}

namespace {

std::vector<std::uint64_t> descending_exponents(const BigInt& v) {
    std::vector<std::uint64_t> exps;
    for (std::int64_t b = static_cast<std::int64_t>(boost::multiprecision::msb(v));
         b >= 0; --b)
        if (boost::multiprecision::bit_test(v, static_cast<std::uint64_t>(b)))
            exps.push_back(static_cast<std::uint64_t>(b));
    return exps;
}

BinaryWord chunk_word(const std::vector<std::uint64_t>& exps, std::uint64_t s) {
    BinaryWord w;
    for (std::uint64_t t_i : exps) {
        if (t_i == 0) {
            w.append_run(1, s + 1);
        } else {
            w.push_back(1);
            w.append_run(0, t_i - 1);
            w.append_run(1, s + 1);
        }
    }
    return w;
}

}  // namespace

SumWord approx_word(const BigInt& w, std::uint64_t n) {
    AlignedValue av = aligned_value(w, n);
    SumWord out;
    out.target = av.v;
    out.exponents = descending_exponents(av.v);
    out.word = chunk_word(out.exponents, 0);
    out.tail_ones = 0;
    // exact sum property: the word's own Birkhoff sum must reproduce V
    BigSumTrace check = birkhoff_phi_trace(out.word, out.word.size());
    if (check.values.back() != av.v)
        throw std::logic_error("approx_word: sum does not match target");
    return out;
}

SumWord approx_word_g(const BigInt& w, std::uint64_t n, std::uint64_t s) {
    AlignedValue av = aligned_value(w, n);
    SumWord out;
    out.target = av.v;
    out.exponents = descending_exponents(av.v);
    out.word = chunk_word(out.exponents, s);
    out.tail_ones = s;
    const std::size_t p = out.exponents.size();
    BigSumTrace check = birkhoff_phi_trace(out.word, out.word.size());
    if (check.values.back() != av.v + BigInt(s) * p)
        throw std::logic_error("approx_word_g: sum does not match target");
    return out;
}

CantorSchedule::CantorSchedule(GrowthFunction psi, double beta, std::uint64_t m)
    : psi_(psi), beta_(beta), m_(m) {
    if (!(beta > 0) || std::isinf(beta))
        throw std::domain_error("cantor schedule: beta must be finite positive");
    if (m < 2) throw std::domain_error("cantor schedule: m must be >= 2");
    RegimeVerdict v = classify(psi, BetaClass::FinitePositive, Potential::Phi);
    if (v.verdict != RegimeVerdict::Verdict::FullDimension)
        throw std::domain_error(
            "cantor schedule: growth function outside the full-dimension regime");

    if (psi.kind == GrowthFunction::Kind::DoubleExp) {
        const double g = psi.param;  // < 1/2 here
        delta_ = 0.5 * std::min(1.0, (1.0 - g / (1.0 - g)) / (2.0 * g));
    }

    // first level from which the word plus one filler word always fits
    auto feasible = [this](std::uint64_t k) {
        const std::uint64_t nk = checkpoint(k), np = checkpoint(k - 1);
        if (nk <= np) return false;
        const std::uint64_t span = nk - np;
        BigInt wk = psi_rounded(nk) - psi_rounded(np);
        if (wk < 1) wk = 1;
        const double lg = log2_big(wk);
        const std::uint64_t n = static_cast<std::uint64_t>(std::max(
            0.0, std::floor(std::min(lg, std::sqrt(static_cast<double>(span) /
                                                   (2.0 + lg))))));
        // conservative word-length cap (n+2)(2+log2 W); the real a_k is below it
        const double cap = (static_cast<double>(n) + 2.0) * (2.0 + lg);
        return cap + static_cast<double>(m_) <= static_cast<double>(span);
    };
    std::uint64_t k = 1;
    for (;;) {
        bool ok = true;
        for (std::uint64_t probe = k; probe < k + 64; ++probe)
            if (!feasible(probe)) { ok = false; break; }
        if (ok) break;
        ++k;
        if (k > 1u << 20)
            throw std::domain_error("cantor schedule: no feasible start level");
    }
    k0_ = k;
}

std::uint64_t CantorSchedule::checkpoint(std::uint64_t k) const {
    if (k == 0) return 0;
    if (psi_.kind == GrowthFunction::Kind::DoubleExp) {
        const double expo = 1.0 / (1.0 - psi_.param) + delta_;
        return static_cast<std::uint64_t>(
            std::floor(std::pow(static_cast<double>(k), expo)));
    }
    return k * k;
}

BigInt CantorSchedule::psi_rounded(std::uint64_t n) const {
    if (n == 0) return 0;  // Psi(N_0) = 0 by convention
    if (n == 1 && psi_.kind == GrowthFunction::Kind::NLogN) return 0;
    // beta * Psi(n) as mantissa * 2^shift in extended precision
    const long double lb = std::log2(static_cast<long double>(beta_));
    long double lg;
    switch (psi_.kind) {
        case GrowthFunction::Kind::NLogN:
            lg = std::log2(static_cast<long double>(n)) +
                 std::log2(std::log(static_cast<long double>(n)));
            break;
        case GrowthFunction::Kind::Power:
            lg = static_cast<long double>(psi_.param) *
                 std::log2(static_cast<long double>(n));
            break;
        default:
            lg = std::pow(static_cast<long double>(n),
                           static_cast<long double>(psi_.param));
            break;
    }
    lg += lb;
    if (lg < 0) return (lg < -1) ? BigInt(0) : BigInt(1);
    const std::int64_t shift = static_cast<std::int64_t>(std::floor(lg)) - 62;
    const long double mant = std::exp2(lg - static_cast<long double>(shift));
    BigInt m(static_cast<std::uint64_t>(std::llround(mant)));
    if (shift >= 0) return m << shift;
    BigInt half = BigInt(1) << (-shift - 1);
    return (m + half) >> (-shift);
}

CantorLevel CantorSchedule::level(std::uint64_t k) const {
    if (k < k0_) throw std::domain_error("cantor schedule: level below first feasible");
    CantorLevel lv;
    lv.k = k;
    lv.n_prev = checkpoint(k - 1);
    lv.n_k = checkpoint(k);
    const std::uint64_t span = lv.n_k - lv.n_prev;
    lv.w_k = psi_rounded(lv.n_k) - psi_rounded(lv.n_prev);
    if (lv.w_k < 1) lv.w_k = 1;
    const double lg = log2_big(lv.w_k);
    lv.digits_n = static_cast<std::uint64_t>(std::max(
        0.0, std::floor(std::min(lg, std::sqrt(static_cast<double>(span) /
                                               (2.0 + lg))))));
    lv.word = approx_word(lv.w_k, lv.digits_n);
    const std::uint64_t a_k = lv.word.word.size();
    if (a_k + m_ > span)
        throw std::domain_error("cantor schedule: level does not fit its span");
    const std::uint64_t rest = span - a_k;
    lv.filler_words = rest / m_;
    lv.pad_ones = rest % m_;
    return lv;
}

namespace {

struct CantorState {
    CantorSchedule schedule;
    FillerPolicy filler;
    Rng rng;
    std::uint64_t level;
    BinaryWord buffer;
    std::size_t offset = 0;
    bool prefix_done = false;

    explicit CantorState(const CantorSchedule& s, FillerPolicy f, std::uint64_t seed)
        : schedule(s), filler(f), rng(seed), level(s.first_level()) {}

    void fill_next() {
        buffer = BinaryWord();
        offset = 0;
        if (!prefix_done) {
            prefix_done = true;
            const std::uint64_t lead = schedule.checkpoint(schedule.first_level() - 1);
            if (lead > 0) {
                buffer.append_run(1, lead);
                return;
            }
        }
        CantorLevel lv = schedule.level(level++);
        for (std::uint64_t i = 0; i < lv.filler_words; ++i) {
            if (filler == FillerPolicy::Deterministic) {
                buffer.append_run(0, schedule.m() - 1);
            } else {
                for (std::uint64_t b = 0; b + 1 < schedule.m(); ++b)
                    buffer.push_back(static_cast<Digit>(rng.coin()));
            }
            buffer.push_back(1);
        }
        buffer.append_run(1, lv.pad_ones);
        buffer.append(lv.word.word);
    }
};

}  // namespace

DigitStream cantor_stream(const CantorSchedule& schedule, FillerPolicy filler,
                          std::uint64_t seed) {
    auto st = std::make_shared<CantorState>(schedule, filler, seed);
    return DigitStream(StreamKind::CantorConstructed,
                       [st]() -> std::optional<Digit> {
                           while (st->offset >= st->buffer.size()) st->fill_next();
                           return st->buffer[st->offset++];
                       });
}

DigitStream cantor_stream(const GrowthFunction& psi, double beta, std::uint64_t m,
                          FillerPolicy filler, std::uint64_t seed) {
    return cantor_stream(CantorSchedule(psi, beta, m), filler, seed);
}

DigitStream infinity_stream(double gamma) {
    if (!(gamma >= 0.5 && gamma < 1.0))
        throw std::domain_error("infinity_stream: gamma must lie in [1/2, 1)");
    const double delta = (gamma + 1.0) / 2.0;
    // smallest K with 2^{K delta} > 1 and 2^k + floor(2^{k delta}) < 2^{k+1}
    // from K on; delta < 1 makes the fit automatic once 2^{k delta} > 1
    std::uint64_t kmin = 1;
    while (std::exp2(static_cast<double>(kmin) * delta) <= 1.0) ++kmin;

    struct State {
        double delta;
        std::uint64_t kmin;
        std::uint64_t pos = 0;
    };
    auto st = std::make_shared<State>(State{delta, kmin});
    return DigitStream(StreamKind::CantorConstructed,
                       [st]() -> std::optional<Digit> {
                           const std::uint64_t p = ++st->pos;
                           if (p < (1ULL << st->kmin) + 1) return Digit{1};
                           std::uint64_t k = 63;
                           while ((1ULL << k) >= p) --k;  // 2^k < p <= 2^{k+1}
                           const std::uint64_t block = static_cast<std::uint64_t>(
                               std::floor(std::exp2(st->delta * static_cast<double>(k))));
                           const bool zero = p >= (1ULL << k) + 1 &&
                                             p <= (1ULL << k) + block;
                           return zero ? Digit{0} : Digit{1};
                       });
}

DigitStream f_m_stream(std::uint64_t m, std::uint64_t seed) {
    if (m < 2) throw std::domain_error("f_m_stream: m must be >= 2");
    struct State {
        std::uint64_t m;
        Rng rng;
        std::uint64_t pos = 0;
    };
    auto st = std::make_shared<State>(State{m, Rng(seed)});
    return DigitStream(StreamKind::UniformRandom, [st]() -> std::optional<Digit> {
        ++st->pos;
        if (st->pos % st->m == 0) return Digit{1};
        return static_cast<Digit>(st->rng.coin());
    });
}

}  // namespace stp
