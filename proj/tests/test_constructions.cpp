#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "stp/constructions.hpp"
#include "stp/rng.hpp"

using namespace stp;

TEST_CASE("aligned value basics") {
    AlignedValue a = aligned_value(5, 1);
    CHECK(a.v == 6);
    CHECK(a.ones == 2);
    CHECK(a.trailing_zeros >= 1);

    CHECK(aligned_value(8, 2).v == 8);  // powers of two stay put
    CHECK(aligned_value(16, 0).v == 16);

    AlignedValue b = aligned_value(7, 0);
    CHECK(b.v == 8);
    CHECK(b.ones == 1);
    CHECK(b.trailing_zeros >= 2);

    CHECK_THROWS_AS(aligned_value(5, 3), std::domain_error);
    CHECK_THROWS_AS(aligned_value(0, 0), std::domain_error);
}

TEST_CASE("aligned value exhaustively for t <= 16") {
    for (std::uint64_t w = 1; w < (1ULL << 17); ++w) {
        const std::uint64_t t = 63 - static_cast<std::uint64_t>(__builtin_clzll(w));
        for (std::uint64_t n = 0; n <= t; ++n) {
            AlignedValue a = aligned_value(w, n);
            const BigInt W = w;
            // window, exact: 2^n W <= 2^n V <= 2^n W + W
            REQUIRE((W << n) <= (a.v << n));
            REQUIRE((a.v << n) <= (W << n) + W);
            REQUIRE(a.ones <= n + 2);
            REQUIRE(a.trailing_zeros >= t - n);
            // minimal multiple of 2^{t-n} in the window
            REQUIRE(a.v - pow2_big(t - n) < W);
            REQUIRE(a.v % pow2_big(t - n) == 0);
        }
    }
}

TEST_CASE("approx word examples") {
    SumWord w1 = approx_word(5, 1);
    CHECK(w1.word.str() == "10111");
    CHECK(w1.target == 6);
    BigInt s5 = oracles::phi_sum(w1.word.str(), 5);
    CHECK(s5 == 6);
    CHECK(2 * s5 >= 2 * 5);       // within [W, 1.5 W] = [5, 7.5]
    CHECK(2 * s5 <= 15);

    // V = 9 = 2^3 + 2^0 exercises the unit chunk
    SumWord w9 = approx_word(9, 3);
    CHECK(w9.target == 9);
    CHECK(w9.word.str() == "10011");
    CHECK(oracles::phi_sum("10011", 5) == 9);

    SumWord wp = approx_word(BigInt(1) << 12, 12);
    CHECK(wp.exponents.size() == 1);
    CHECK(wp.word.size() == 13);
    CHECK(oracles::phi_sum(wp.word.str(), 13) == BigInt(1) << 12);

    CHECK_THROWS_AS(approx_word(5, 9), std::domain_error);
}

TEST_CASE("approx word exhaustively to 2^9") {
    // the acceptance suite extends this to 2^12
    for (std::uint64_t w = 1; w < (1ULL << 9); ++w) {
        const std::uint64_t t = 63 - static_cast<std::uint64_t>(__builtin_clzll(w));
        for (std::uint64_t n = 0; n <= t; ++n) {
            SumWord sw = approx_word(w, n);
            REQUIRE(oracles::phi_sum(sw.word.str(), sw.word.size()) == sw.target);
            REQUIRE((BigInt(w) << n) <= (sw.target << n));
            REQUIRE((sw.target << n) <= (BigInt(w) << n) + w);
            const double len_cap = (static_cast<double>(n) + 2.0) *
                                   (2.0 + std::log2(static_cast<double>(w)));
            REQUIRE(static_cast<double>(sw.word.size()) <= len_cap);
        }
    }
}

TEST_CASE("approx word with 1-run tails: s = 0 degenerates") {
    for (std::uint64_t w : {5ULL, 9ULL, 100ULL, 4096ULL}) {
        const std::uint64_t t = 63 - static_cast<std::uint64_t>(__builtin_clzll(w));
        SumWord plain = approx_word(w, t / 2);
        SumWord tailed = approx_word_g(w, t / 2, 0);
        CHECK(plain.word == tailed.word);
    }
}

TEST_CASE("approx word g on the worked example") {
    SumWord sw = approx_word_g(4, 0, 2);
    CHECK(sw.word.str() == "10111");  // chunk 101 with tail 11
    BinaryWord closed = sw.word;
    closed.push_back(1);
    auto trace = birkhoff_g_interval_trace(closed, sw.word.size());
    const BigRat lo = trace.back().lower;
    const BigRat hi = trace.back().upper;
    // bounds W and W(1+2^-n)(1+2^-s) + 2 s (n+2)
    CHECK(lo >= 4);
    CHECK(hi <= BigRat(4) * 2 * BigRat(5, 4) + 8);
    // exact per-word lower: V + s p
    CHECK(lo >= BigRat(sw.target + BigInt(2) * sw.exponents.size()));
}

TEST_CASE("approx word g length bound exhaustively") {
    for (std::uint64_t w = 1; w < (1ULL << 12); w += 1) {
        const std::uint64_t t = 63 - static_cast<std::uint64_t>(__builtin_clzll(w));
        for (std::uint64_t n = 0; n <= t; n += (t > 4 ? 3 : 1)) {
            for (std::uint64_t s = 0; s <= 8; s += 2) {
                SumWord sw = approx_word_g(w, n, s);
                const double cap =
                    (static_cast<double>(n) + 2.0) *
                    (std::log2(static_cast<double>(w)) + static_cast<double>(s) + 2.0);
                REQUIRE(static_cast<double>(sw.word.size()) <= cap);
            }
        }
    }
}

TEST_CASE("approx word g interval sums honor the certified bounds") {
    Rng rng(64);
    for (int rep = 0; rep < 200; ++rep) {
        const std::uint64_t w = 2 + (rng.bits() % 4000);
        const std::uint64_t t = 63 - static_cast<std::uint64_t>(__builtin_clzll(w));
        const std::uint64_t n = rng.bits() % (t + 1);
        const std::uint64_t s = rng.bits() % 6;
        SumWord sw = approx_word_g(w, n, s);
        BinaryWord closed = sw.word;
        closed.push_back(1);
        auto trace = birkhoff_g_interval_trace(closed, sw.word.size());
        REQUIRE(trace.back().lower >= w);
        const BigRat upper_cap =
            BigRat(BigInt(w) * (pow2_big(n) + 1) * (pow2_big(s) + 1),
                   pow2_big(n + s)) +
            BigRat(2 * s * (n + 2));
        REQUIRE(trace.back().upper <= upper_cap);
    }
}

TEST_CASE("cantor schedule for the quadratic target") {
    CantorSchedule sched(GrowthFunction::power(2.0), 1.0, 16);
    CHECK(sched.first_level() >= 1);
    CHECK(sched.checkpoint(0) == 0);
    CHECK(sched.psi_rounded(0) == 0);
    CHECK(sched.psi_rounded(100) == 10000);  // exact for beta 1, n^2
    CantorLevel lv = sched.level(sched.first_level() + 5);
    CHECK(lv.n_k - lv.n_prev ==
          lv.filler_words * 16 + lv.pad_ones + lv.word.word.size());
    CHECK(lv.w_k == BigInt(lv.n_k) * lv.n_k - BigInt(lv.n_prev) * lv.n_prev);
}

TEST_CASE("cantor stream structure: filler words end in forced ones") {
    CantorSchedule sched(GrowthFunction::power(2.0), 1.0, 16);
    DigitStream s = cantor_stream(sched, FillerPolicy::Seeded, 7);
    const std::uint64_t k_probe = sched.first_level() + 3;
    BinaryWord prefix = s.take(sched.checkpoint(k_probe));
    for (std::uint64_t k = sched.first_level(); k <= k_probe; ++k) {
        CantorLevel lv = sched.level(k);
        for (std::uint64_t t = 1; t <= lv.filler_words; ++t) {
            // position N_{k-1} + t m is 1-indexed
            REQUIRE(prefix[lv.n_prev + t * 16 - 1] == 1);
        }
        REQUIRE(prefix[lv.n_k - 1] == 1);  // every level ends its word with 1
    }
}

TEST_CASE("cantor stream ratio lands near one for both fillers") {
    CantorSchedule sched(GrowthFunction::power(2.0), 1.0, 16);
    for (FillerPolicy policy : {FillerPolicy::Deterministic, FillerPolicy::Seeded}) {
        DigitStream s = cantor_stream(sched, policy, 20260809);
        BinaryWord prefix = s.take(100000);
        // locate the last 5 checkpoints within the prefix
        std::vector<std::uint64_t> cps;
        for (std::uint64_t k = sched.first_level(); sched.checkpoint(k) <= 100000; ++k)
            cps.push_back(sched.checkpoint(k));
        REQUIRE(cps.size() >= 5);
        double worst = 0;
        for (std::size_t i = cps.size() - 5; i < cps.size(); ++i) {
            BigInt s_nk = oracles::phi_sum(prefix.str(), cps[i]);
            double ratio = std::exp2(
                log2_big(s_nk) -
                2.0 * std::log2(static_cast<double>(cps[i])));
            worst = std::max(worst, std::fabs(ratio - 1.0));
            REQUIRE(ratio >= 0.8);
            REQUIRE(ratio <= 1.2);
        }
        CHECK(worst <= 0.2);
    }
}

TEST_CASE("cantor running deviation shrinks as early levels drop") {
    CantorSchedule sched(GrowthFunction::power(2.0), 1.0, 16);
    DigitStream s = cantor_stream(sched, FillerPolicy::Seeded, 99);
    BinaryWord prefix = s.take(60000);
    std::vector<double> dev;
    for (std::uint64_t k = sched.first_level(); sched.checkpoint(k) <= 60000; ++k) {
        const std::uint64_t nk = sched.checkpoint(k);
        BigInt s_nk = oracles::phi_sum(prefix.str(), nk);
        dev.push_back(std::fabs(
            std::exp2(log2_big(s_nk) - 2.0 * std::log2(static_cast<double>(nk))) - 1.0));
    }
    // running max over [k0, end] is nonincreasing in k0
    double tail_max = 0;
    std::vector<double> suffix_max(dev.size());
    for (std::size_t i = dev.size(); i-- > 0;) {
        tail_max = std::max(tail_max, dev[i]);
        suffix_max[i] = tail_max;
    }
    for (std::size_t i = 1; i < suffix_max.size(); ++i)
        REQUIRE(suffix_max[i] <= suffix_max[i - 1] + 1e-12);
}

TEST_CASE("cantor schedule for the double-exponential target") {
    GrowthFunction psi = GrowthFunction::double_exp(0.4);
    CantorSchedule sched(psi, 1.0, 8);
    const double g = 0.4;
    CHECK(g / (1.0 - g) + sched.delta() * g < 1.0);
    // N_{k+1} - N_k grows like k^{gamma/(1-gamma) + delta}
    const double expo = g / (1.0 - g) + sched.delta();
    std::uint64_t k = sched.first_level() + 20;
    const double span = static_cast<double>(sched.checkpoint(k + 1) - sched.checkpoint(k));
    const double predicted = std::pow(static_cast<double>(k), expo) *
                             (1.0 / (1.0 - g) + sched.delta());
    CHECK(span / predicted > 0.5);
    CHECK(span / predicted < 2.0);
    // a couple of levels materialize with genuinely big targets
    CantorLevel lv = sched.level(sched.first_level() + 2);
    CHECK(lv.w_k >= 1);
    DigitStream s = cantor_stream(sched, FillerPolicy::Deterministic, 0);
    BinaryWord prefix = s.take(sched.checkpoint(sched.first_level() + 2));
    CHECK(prefix[prefix.size() - 1] == 1);

    CHECK_THROWS_AS(CantorSchedule(GrowthFunction::double_exp(0.6), 1.0, 16),
                    std::domain_error);
    CHECK_THROWS_AS(CantorSchedule(GrowthFunction::power(2.0), 0.0, 16),
                    std::domain_error);
}

TEST_CASE("cantor stream determinism") {
    CantorSchedule sched(GrowthFunction::n_log_n(), 2.5, 8);
    DigitStream a = cantor_stream(sched, FillerPolicy::Seeded, 5);
    DigitStream b = cantor_stream(sched, FillerPolicy::Seeded, 5);
    CHECK(a.take(5000) == b.take(5000));
    CHECK(a.kind() == StreamKind::CantorConstructed);
}

TEST_CASE("infinity stream structure and goldens") {
    const double gamma = 0.6, delta = 0.8;
    DigitStream s = infinity_stream(gamma);
    const std::uint64_t horizon = 1 << 14;
    BinaryWord prefix = s.take(horizon);
    // zeros exactly on the prescribed ranges
    for (std::uint64_t k = 1; (1ULL << k) < horizon; ++k) {
        const std::uint64_t block = static_cast<std::uint64_t>(
            std::floor(std::exp2(delta * static_cast<double>(k))));
        for (std::uint64_t p = (1ULL << k) + 1;
             p <= std::min<std::uint64_t>((1ULL << k) + block, horizon); ++p)
            REQUIRE(prefix[p - 1] == 0);
        if ((1ULL << k) <= horizon) REQUIRE(prefix[(1ULL << k) - 1] == 1);
    }

    // log2 S at n(k) = 2^k + block + 1 is block + 1 up to a vanishing term,
    // and the margin over n^gamma grows (cross-checked against an
    // independent exact-integer oracle run)
    double prev_diff = 0.0;
    for (std::uint64_t k = 8; k <= 14; ++k) {
        const std::uint64_t block = static_cast<std::uint64_t>(
            std::floor(std::exp2(delta * static_cast<double>(k))));
        const std::uint64_t nk = (1ULL << k) + block + 1;
        DigitStream fresh = infinity_stream(gamma);
        BigInt s_nk = birkhoff_phi_sum(fresh, nk);
        const double l2 = log2_big(s_nk);
        REQUIRE(std::fabs(l2 - static_cast<double>(block + 1)) < 1e-6);
        const double diff = l2 - std::pow(static_cast<double>(nk), gamma);
        REQUIRE(diff > 0.0);
        REQUIRE(diff > prev_diff);
        prev_diff = diff;
    }

    CHECK_THROWS_AS(infinity_stream(0.4), std::domain_error);
    CHECK_THROWS_AS(infinity_stream(1.0), std::domain_error);
}

TEST_CASE("infinity stream constrained positions have vanishing density") {
    const double delta = 0.8;
    DigitStream s = infinity_stream(0.6);
    const std::uint64_t N = 1 << 20;
    std::uint64_t zeros = 0;
    for (std::uint64_t p = 1; p <= N; ++p) zeros += (s.next() == 0);
    CHECK(static_cast<double>(zeros) <=
          2.0 * std::pow(static_cast<double>(N), delta));
}

TEST_CASE("f_m stream forces every m-th digit") {
    DigitStream s2 = f_m_stream(2, 8);
    BinaryWord w = s2.take(2000);
    for (std::size_t p = 2; p <= 2000; p += 2) REQUIRE(w[p - 1] == 1);

    DigitStream a = f_m_stream(4, 123);
    DigitStream b = f_m_stream(4, 123);
    CHECK(a.take(1000) == b.take(1000));
    CHECK_THROWS_AS(f_m_stream(1, 0), std::domain_error);
}
