#include "stp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stp/gibbs.hpp"
#include "stp/rng.hpp"
#include "stp/spectrum.hpp"

namespace stp {

namespace {

constexpr double kQuantileLevels[] = {0.1, 0.25, 0.5, 0.75, 0.9};

double quantile_sorted(const std::vector<double>& sorted, double level) {
    const double h = level * static_cast<double>(sorted.size() - 1);
    const std::size_t i = static_cast<std::size_t>(h);
    if (i + 1 >= sorted.size()) return sorted.back();
    const double frac = h - static_cast<double>(i);
    return sorted[i] * (1.0 - frac) + sorted[i + 1] * frac;
}

double weak_law_statistic(std::uint64_t n, std::uint64_t seed) {
    DigitStream s = uniform_stream(seed);
    BigInt sn = birkhoff_phi_sum(s, n);
    const double nd = static_cast<double>(n);
    return sn.convert_to<double>() / (nd * std::log(nd));
}

QuantileReport weak_law_reduce(std::uint64_t n, std::uint64_t samples,
                               std::uint64_t seed, std::vector<double>& stats) {
    std::sort(stats.begin(), stats.end());
    QuantileReport rep;
    rep.n = n;
    rep.samples = samples;
    rep.seed = seed;
    rep.target = 1.0 / std::log(2.0);
    for (double level : kQuantileLevels)
        rep.quantiles[level] = quantile_sorted(stats, level);
    return rep;
}

void weak_law_check_args(std::uint64_t n, std::uint64_t samples) {
    if (n < 16) throw std::domain_error("weak_law: n must be >= 16");
    if (samples < 100) throw std::domain_error("weak_law: samples must be >= 100");
}

}  // namespace

QuantileReport weak_law_serial(std::uint64_t n, std::uint64_t samples,
                               std::uint64_t seed) {
    weak_law_check_args(n, samples);
    std::vector<double> stats(samples);
    for (std::uint64_t i = 0; i < samples; ++i)
        stats[i] = weak_law_statistic(n, derived_seed(seed, i));
    return weak_law_reduce(n, samples, seed, stats);
}

QuantileReport weak_law(std::uint64_t n, std::uint64_t samples, std::uint64_t seed,
                        int threads) {
    if (threads <= 1) return weak_law_serial(n, samples, seed);
    weak_law_check_args(n, samples);
    std::vector<double> stats(samples);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i)
        stats[static_cast<std::size_t>(i)] =
            weak_law_statistic(n, derived_seed(seed, static_cast<std::uint64_t>(i)));
    return weak_law_reduce(n, samples, seed, stats);
}

double lambda_phi_at_least(double y) {
    if (y <= 1.0) return 1.0;
    const double k = std::ceil(std::log2(y));
    return std::exp2(-k);
}

std::vector<double> dichotomy_series(
    const std::function<std::int64_t(std::uint64_t)>& ceil_log2_psi,
    std::uint64_t n_max) {
    if (n_max < 1) throw std::domain_error("dichotomy_series: N must be >= 1");
    std::vector<double> sums(n_max);
    double acc = 0;
    for (std::uint64_t n = 1; n <= n_max; ++n) {
        const std::int64_t k = ceil_log2_psi(n);
        acc += (k <= 0) ? 1.0 : ((k > 1074) ? 0.0 : std::exp2(-static_cast<double>(k)));
        sums[n - 1] = acc;
    }
    return sums;
}

std::vector<double> dichotomy_series(const GrowthFunction& psi, std::uint64_t n_max) {
    auto ceil_log2 = [&psi](std::uint64_t n) -> std::int64_t {
        switch (psi.kind) {
            case GrowthFunction::Kind::NLogN: {
                if (n == 1) return 0;  // Psi(1) = 0, phi >= 0 always
                const double y = static_cast<double>(n) * std::log(static_cast<double>(n));
                return static_cast<std::int64_t>(std::ceil(std::log2(y)));
            }
            case GrowthFunction::Kind::Power: {
                const double a = psi.param;
                if (a == std::floor(a) && a < 60) {
                    // integral exponent: exact integer ceiling
                    BigInt p = 1;
                    for (int i = 0; i < static_cast<int>(a); ++i) p *= n;
                    return ceil_log2_big(p);
                }
                return static_cast<std::int64_t>(
                    std::ceil(a * std::log2(static_cast<double>(n))));
            }
            default:
                return static_cast<std::int64_t>(
                    std::ceil(std::pow(static_cast<double>(n), psi.param)));
        }
    };
    return dichotomy_series(ceil_log2, n_max);
}

namespace {

void entropy_check_args(int depth, std::uint64_t samples) {
    if (depth < 4) throw std::domain_error("entropy_dim_estimate: depth must be >= 4");
    if (depth > 26) throw std::domain_error("entropy_dim_estimate: depth above 26 unsupported");
    if (samples < (10ULL << depth))
        throw std::domain_error("entropy_dim_estimate: undersampled, need >= 10 * 2^depth");
}

std::uint64_t prefix_bin(DigitStream& s, int depth) {
    std::uint64_t idx = 0;
    for (int b = 0; b < depth; ++b) idx = (idx << 1) | s.next();
    return idx;
}

double entropy_from_counts(const std::vector<std::uint64_t>& counts,
                           std::uint64_t samples, int depth) {
    double h = 0;
    const double total = static_cast<double>(samples);
    for (std::uint64_t c : counts) {
        if (c == 0) continue;
        const double f = static_cast<double>(c) / total;
        h -= f * std::log2(f);
    }
    return h / depth;
}

}  // namespace

double entropy_dim_estimate_serial(const StreamFactory& factory, int depth,
                                   std::uint64_t samples, std::uint64_t seed) {
    entropy_check_args(depth, samples);
    std::vector<std::uint64_t> counts(1ULL << depth, 0);
    for (std::uint64_t i = 0; i < samples; ++i) {
        DigitStream s = factory(derived_seed(seed, i));
        ++counts[prefix_bin(s, depth)];
    }
    return entropy_from_counts(counts, samples, depth);
}

double entropy_dim_estimate(const StreamFactory& factory, int depth,
                            std::uint64_t samples, std::uint64_t seed,
                            int threads) {
    if (threads <= 1) return entropy_dim_estimate_serial(factory, depth, samples, seed);
    entropy_check_args(depth, samples);
    std::vector<std::uint64_t> counts(1ULL << depth, 0);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
    {
        std::vector<std::uint64_t> local(counts.size(), 0);
#pragma omp for schedule(static)
        for (std::int64_t i = 0; i < static_cast<std::int64_t>(samples); ++i) {
            DigitStream s = factory(derived_seed(seed, static_cast<std::uint64_t>(i)));
            ++local[prefix_bin(s, depth)];
        }
#pragma omp critical
        for (std::size_t b = 0; b < counts.size(); ++b) counts[b] += local[b];
    }
#else
    for (std::uint64_t i = 0; i < samples; ++i) {
        DigitStream s = factory(derived_seed(seed, i));
        ++counts[prefix_bin(s, depth)];
    }
#endif
    return entropy_from_counts(counts, samples, depth);
}

FrequencyReport e_alpha_frequency_check(double alpha, std::uint64_t prefix_length,
                                        std::uint64_t seed) {
    if (!(alpha >= 1)) throw std::domain_error("e_alpha_frequency_check: alpha must be >= 1");
    FrequencyReport rep;
    rep.alpha = alpha;
    rep.prefix_length = prefix_length;
    rep.seed = seed;
    if (alpha == 1.0) {
        rep.q0 = HUGE_VAL;
        rep.frequency = 1.0;  // the all-ones point: every digit is 1
        rep.target = 1.0;
        return rep;
    }
    SpectrumSample sp = dim_at_alpha(alpha);
    GibbsDistribution dist = build_distribution(sp.q0);
    rep.q0 = sp.q0;
    rep.target = 1.0 / dist.mean_block;
    DigitStream s = gibbs_stream(dist, seed);
    std::uint64_t ones = 0;
    for (std::uint64_t i = 0; i < prefix_length; ++i) ones += s.next();
    rep.frequency = static_cast<double>(ones) / static_cast<double>(prefix_length);
    return rep;
}

}  // namespace stp
