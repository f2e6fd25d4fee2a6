#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stp/dyadic.hpp"

namespace stp {

// The normalization family: n log n, n^a (a > 1), 2^(n^gamma) (gamma > 0).
struct GrowthFunction {
    enum class Kind { NLogN, Power, DoubleExp };

    Kind kind = Kind::NLogN;
    double param = 0;  // a for Power, gamma for DoubleExp

    static GrowthFunction n_log_n();
    static GrowthFunction power(double a);
    static GrowthFunction double_exp(double gamma);
};

// log2 of Psi(n) for n >= 2, relative error <= 1e-12. The inner log of
// n log n is natural.
double psi_log2(const GrowthFunction& psi, std::uint64_t n);

enum class BetaClass { Zero, FinitePositive, Infinity };
enum class Potential { Phi, G };

struct RegimeVerdict {
    Potential potential;
    BetaClass beta_class;
    enum class Verdict { FullDimension, Empty } verdict;
    std::string citation;  // self-contained statement of the regime fact
};

// The growth-rate trichotomy. Slow family (n log n, n^a, 2^(n^gamma) with
// gamma < 1/2): full dimension for every beta. gamma in [1/2,1): empty for
// finite positive beta, full for beta = 0 and infinity. gamma >= 1: full
// only for beta = 0. The 1/x potential has the identical table.
RegimeVerdict classify(const GrowthFunction& psi, BetaClass beta_class,
                       Potential potential);

struct RatioCheckpoint {
    std::uint64_t n;
    double log2_S;
    double log2_psi;
    double log_ratio;  // log2_S - log2_psi
};

struct RatioTrace {
    std::vector<RatioCheckpoint> checkpoints;
};

// Checkpoints at every 1-position n <= N (and the position just after it);
// log2_S comes exactly from the running big-integer sum.
RatioTrace ratio_trace(DigitStream& stream, const GrowthFunction& psi,
                       std::uint64_t n);

struct ObstructionRow {
    std::uint64_t boundary;       // block index j >= 2
    std::uint64_t position;       // n_1 + ... + n_j
    double sum_ratio_log2;        // log2(S_j / S_{j-1}), exact rational in log2
    double psi_step_log2;         // log2 Psi(pos) - log2 Psi(pos - 1)
    double block_slack;           // n_j / (n_1+...+n_{j-1})^{1-gamma}, gamma<1
    bool step_at_least_one;       // certified Psi(n)/Psi(n-1) >= 2, gamma>=1
};

// Diagnostics of why no finite positive beta can be tracked in the
// double-exponential regimes.
std::vector<ObstructionRow> obstruction_witness(const BlockDecomposition& blocks,
                                                const GrowthFunction& psi);

}  // namespace stp
