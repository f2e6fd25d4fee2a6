#pragma once

#include <cstdint>
#include <vector>

#include "stp/dyadic.hpp"

namespace stp {

// Product measure over return blocks with weights p_n = 2^{-t n - q(2^n-1)},
// t = t(q). Normalization to 1 is the defining property of t(q); the tail
// past n_cut (mass < tol) is folded into the last atom of the sampling cdf.
struct GibbsDistribution {
    double q = 0;
    double t = 0;
    std::vector<double> probabilities;  // p_1..p_{n_cut}, unfolded
    std::vector<double> cdf;            // sampling cdf, last entry exactly 1
    double alpha = 0;                   // E[2^n - 1] / E[n]
    double mean_block = 0;              // E[n]
    double entropy_bits = 0;            // -sum p log2 p
    int n_cut = 0;
};

GibbsDistribution build_distribution(double q, double tol = 1e-15);

BlockDecomposition sample_blocks(const GibbsDistribution& dist, std::uint64_t ell,
                                 std::uint64_t seed);

// Digit stream of i.i.d. Gibbs blocks.
DigitStream gibbs_stream(const GibbsDistribution& dist, std::uint64_t seed);

struct GibbsStatistics {
    std::uint64_t samples = 0;  // ell * reps
    double mean_block = 0;
    double alpha_hat = 0;       // mean over reps of per-rep block-sum ratios
    double alpha_se = 0;        // standard error over reps
    double localdim_hat = 0;
    double localdim_target = 0; // t + q * alpha
    std::uint64_t max_block_seen = 0;
};

GibbsStatistics gibbs_statistics(const GibbsDistribution& dist, std::uint64_t ell,
                                 std::uint64_t reps, std::uint64_t seed,
                                 int threads = 1);

// Serial reference for the parallel kernel.
GibbsStatistics gibbs_statistics_serial(const GibbsDistribution& dist,
                                        std::uint64_t ell, std::uint64_t reps,
                                        std::uint64_t seed);

}  // namespace stp
