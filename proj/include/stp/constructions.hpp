#pragma once

#include <cstdint>
#include <vector>

#include "stp/bigint.hpp"
#include "stp/dyadic.hpp"
#include "stp/growth.hpp"

namespace stp {

// The least multiple V of 2^{t-n} at or above W, where 2^t <= W < 2^{t+1}.
// V sits in [W, W(1 + 2^-n)], carries at most n+2 one-bits and at least
// t-n trailing zeros.
struct AlignedValue {
    BigInt w;
    BigInt v;
    std::uint64_t n = 0;
    std::uint64_t t = 0;              // floor(log2 W)
    std::uint64_t ones = 0;           // popcount of v
    std::uint64_t trailing_zeros = 0; // 0 when v == 0 cannot happen (v >= W >= 1)
};

AlignedValue aligned_value(const BigInt& w, std::uint64_t n);

// A word whose exact Birkhoff sum over its own length equals the aligned
// target V: the chunks 1 0^{t_i - 1} 1 of the binary decomposition
// V = 2^{t_1} + ... + 2^{t_p} (chunk "1" when t_i = 0).
struct SumWord {
    BinaryWord word;
    BigInt target;                     // V
    std::vector<std::uint64_t> exponents;  // t_1 > ... > t_p
    std::uint64_t tail_ones = 0;       // s of the 1/x variant, 0 otherwise
};

SumWord approx_word(const BigInt& w, std::uint64_t n);

// 1/x variant: chunks carry 1^{s+1} tails, |word| <= (n+2)(log2 W + s + 2).
SumWord approx_word_g(const BigInt& w, std::uint64_t n, std::uint64_t s);

enum class FillerPolicy { Deterministic, Seeded };

// Digit schedule of the level-k Cantor construction tracking beta * Psi.
struct CantorLevel {
    std::uint64_t k = 0;
    std::uint64_t n_prev = 0;    // N_{k-1}
    std::uint64_t n_k = 0;       // N_k
    BigInt w_k;                  // rounded increment of beta * Psi
    std::uint64_t digits_n = 0;  // the n of the aligned word
    std::uint64_t filler_words = 0;  // t_k
    std::uint64_t pad_ones = 0;      // ell_k < m
    SumWord word;
};

class CantorSchedule {
public:
    CantorSchedule(GrowthFunction psi, double beta, std::uint64_t m);

    const GrowthFunction& psi() const { return psi_; }
    double beta() const { return beta_; }
    std::uint64_t m() const { return m_; }
    std::uint64_t first_level() const { return k0_; }
    double delta() const { return delta_; }  // schedule exponent tweak, 2^(n^gamma) only

    std::uint64_t checkpoint(std::uint64_t k) const;  // N_k
    CantorLevel level(std::uint64_t k) const;         // k >= first_level()

    // round(beta * Psi(n)) in exact integers (extended-precision mantissa)
    BigInt psi_rounded(std::uint64_t n) const;

private:
    GrowthFunction psi_;
    double beta_;
    std::uint64_t m_;
    std::uint64_t k0_ = 1;
    double delta_ = 0;
};

DigitStream cantor_stream(const CantorSchedule& schedule, FillerPolicy filler,
                          std::uint64_t seed);
DigitStream cantor_stream(const GrowthFunction& psi, double beta, std::uint64_t m,
                          FillerPolicy filler, std::uint64_t seed);

// Zero blocks of length floor(2^{k delta}) at positions 2^k+1,..., ones
// elsewhere; realizes beta = infinity against 2^(n^gamma), gamma in [1/2,1).
DigitStream infinity_stream(double gamma);

// Digits at positions k*m forced to 1, fair coins elsewhere.
DigitStream f_m_stream(std::uint64_t m, std::uint64_t seed);

}  // namespace stp
