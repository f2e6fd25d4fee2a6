#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "stp/dyadic.hpp"
#include "stp/growth.hpp"

namespace stp {

// S_n/(n ln n) over seeded uniform streams; converges in probability to
// 1/ln 2 = 1.4427 (slowly).
struct QuantileReport {
    std::uint64_t n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::map<double, double> quantiles;  // levels .1 .25 .5 .75 .9
    double target = 0;                   // 1/ln 2
};

QuantileReport weak_law(std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                        int threads = 1);
QuantileReport weak_law_serial(std::uint64_t n, std::uint64_t samples,
                               std::uint64_t seed);

// Exact tail law of the payoff: lambda(phi >= y) = 2^{-ceil(log2 y)} for
// y > 1, else 1.
double lambda_phi_at_least(double y);

// Partial sums of sum_n lambda(phi >= Psi(n)); the generic entry point takes
// ceil(log2 Psi(n)) per n so constant or custom normalizers can be probed.
std::vector<double> dichotomy_series(const GrowthFunction& psi, std::uint64_t n_max);
std::vector<double> dichotomy_series(
    const std::function<std::int64_t(std::uint64_t)>& ceil_log2_psi,
    std::uint64_t n_max);

using StreamFactory = std::function<DigitStream(std::uint64_t seed)>;

// Empirical Shannon entropy of depth-prefixes over 2^depth bins, divided by
// depth: a dimension proxy with closed-form targets for the samplers here.
double entropy_dim_estimate(const StreamFactory& factory, int depth,
                            std::uint64_t samples, std::uint64_t seed,
                            int threads = 1);
double entropy_dim_estimate_serial(const StreamFactory& factory, int depth,
                                   std::uint64_t samples, std::uint64_t seed);

struct FrequencyReport {
    double alpha = 0;
    double q0 = 0;        // infinity for alpha = 1
    std::uint64_t prefix_length = 0;
    std::uint64_t seed = 0;
    double frequency = 0; // empirical frequency of digit 1
    double target = 0;    // 1 for alpha = 1, else 1/E[block]
};

FrequencyReport e_alpha_frequency_check(double alpha, std::uint64_t prefix_length,
                                        std::uint64_t seed);

}  // namespace stp
