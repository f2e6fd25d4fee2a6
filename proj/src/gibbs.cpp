#include "stp/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stp/pressure.hpp"
#include "stp/rng.hpp"

namespace stp {

GibbsDistribution build_distribution(double q, double tol) {
    if (!(q > 0)) throw std::domain_error("build_distribution: q must be positive");
    if (!(tol > 0)) throw std::domain_error("build_distribution: tol must be positive");

    PressureSolution root = solve_t(q);
    GibbsDistribution d;
    d.q = q;
    d.t = root.t_of_q;

    long double sum = 0, sum_n = 0, sum_phi = 0, entropy = 0;
    for (int n = 1; n <= 1100; ++n) {
        long double p2n = std::exp2(static_cast<long double>(n));
        long double lg = -static_cast<long double>(d.t) * n -
                         static_cast<long double>(q) * (p2n - 1.0L);
        long double p = std::exp2(lg);
        if (p <= 0) break;
        d.probabilities.push_back(static_cast<double>(p));
        sum += p;
        sum_n += n * p;
        sum_phi += (p2n - 1.0L) * p;
        entropy += -p * lg;
        // doubly-exponential decay: once the next atom is below tol * sum
        // and past the mode, the remaining tail is below tol
        long double next = std::exp2(-static_cast<long double>(d.t) * (n + 1) -
                                      static_cast<long double>(q) * (2.0L * p2n - 1.0L));
        if (n >= 2 && next < 0.5L * tol * sum && next < p) break;
    }
    d.n_cut = static_cast<int>(d.probabilities.size());
    d.alpha = static_cast<double>(sum_phi / sum_n);
    d.mean_block = static_cast<double>(sum_n / sum);
    d.entropy_bits = static_cast<double>(entropy / sum);

    d.cdf.resize(d.probabilities.size());
    long double acc = 0;
    for (std::size_t i = 0; i < d.probabilities.size(); ++i) {
        acc += d.probabilities[i];
        d.cdf[i] = static_cast<double>(acc);
    }
    d.cdf.back() = 1.0;  // tail folded into the last atom
    return d;
}

namespace {

std::uint64_t draw_block(const GibbsDistribution& dist, Rng& rng) {
    double u = rng.uniform01();
    auto it = std::upper_bound(dist.cdf.begin(), dist.cdf.end(), u);
    if (it == dist.cdf.end()) --it;
    return static_cast<std::uint64_t>(it - dist.cdf.begin()) + 1;
}

}  // namespace

BlockDecomposition sample_blocks(const GibbsDistribution& dist, std::uint64_t ell,
                                 std::uint64_t seed) {
    if (ell < 1) throw std::domain_error("sample_blocks: ell must be >= 1");
    Rng rng(seed);
    BlockDecomposition out;
    out.blocks.reserve(ell);
    for (std::uint64_t k = 0; k < ell; ++k) out.blocks.push_back(draw_block(dist, rng));
    return out;
}

DigitStream gibbs_stream(const GibbsDistribution& dist, std::uint64_t seed) {
    struct State {
        GibbsDistribution dist;
        Rng rng;
        std::uint64_t zeros_left = 0;
        bool emit_one = false;
    };
    auto st = std::make_shared<State>(State{dist, Rng(seed)});
    return DigitStream(StreamKind::GibbsSampled, [st]() -> std::optional<Digit> {
        if (st->zeros_left > 0) {
            --st->zeros_left;
            return Digit{0};
        }
        if (st->emit_one) {
            st->emit_one = false;
            return Digit{1};
        }
        std::uint64_t n = draw_block(st->dist, st->rng);
        if (n == 1) return Digit{1};
        st->zeros_left = n - 2;
        st->emit_one = true;
        return Digit{0};
    });
}

namespace {

struct RepResult {
    double ratio;        // sum(2^{n_k}-1) / sum(n_k)
    double localdim;     // (t sum n + q sum(2^n-1)) / sum n
    double mean_block;
    std::uint64_t max_block;
};

RepResult run_rep(const GibbsDistribution& dist, std::uint64_t ell,
                  std::uint64_t seed) {
    Rng rng(seed);
    std::uint64_t sum_n = 0;
    BigInt sum_phi = 0;
    std::uint64_t max_block = 0;
    for (std::uint64_t k = 0; k < ell; ++k) {
        std::uint64_t n = draw_block(dist, rng);
        sum_n += n;
        sum_phi += pow2_big(n) - 1;
        max_block = std::max(max_block, n);
    }
    double ratio = sum_phi.convert_to<double>() / static_cast<double>(sum_n);
    return RepResult{ratio, dist.t + dist.q * ratio,
                     static_cast<double>(sum_n) / static_cast<double>(ell), max_block};
}

GibbsStatistics reduce(const GibbsDistribution& dist, std::uint64_t ell,
                       std::uint64_t reps, const std::vector<RepResult>& rr) {
    GibbsStatistics st;
    st.samples = ell * reps;
    double sum_ratio = 0, sum_local = 0, sum_mean = 0;
    for (const RepResult& r : rr) {
        sum_ratio += r.ratio;
        sum_local += r.localdim;
        sum_mean += r.mean_block;
        st.max_block_seen = std::max(st.max_block_seen, r.max_block);
    }
    st.alpha_hat = sum_ratio / static_cast<double>(reps);
    st.localdim_hat = sum_local / static_cast<double>(reps);
    st.mean_block = sum_mean / static_cast<double>(reps);
    st.localdim_target = dist.t + dist.q * dist.alpha;
    double var = 0;
    for (const RepResult& r : rr) {
        double d = r.ratio - st.alpha_hat;
        var += d * d;
    }
    st.alpha_se = (reps > 1) ? std::sqrt(var / (static_cast<double>(reps - 1) *
                                                static_cast<double>(reps)))
                             : 0.0;
    return st;
}

}  // namespace

GibbsStatistics gibbs_statistics_serial(const GibbsDistribution& dist,
                                        std::uint64_t ell, std::uint64_t reps,
                                        std::uint64_t seed) {
    if (ell < 1 || reps < 1)
        throw std::domain_error("gibbs_statistics: ell and reps must be >= 1");
    std::vector<RepResult> rr(reps);
    for (std::uint64_t r = 0; r < reps; ++r)
        rr[r] = run_rep(dist, ell, derived_seed(seed, r));
    return reduce(dist, ell, reps, rr);
}

GibbsStatistics gibbs_statistics(const GibbsDistribution& dist, std::uint64_t ell,
                                 std::uint64_t reps, std::uint64_t seed,
                                 int threads) {
    if (threads <= 1) return gibbs_statistics_serial(dist, ell, reps, seed);
    if (ell < 1 || reps < 1)
        throw std::domain_error("gibbs_statistics: ell and reps must be >= 1");
    std::vector<RepResult> rr(reps);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(reps); ++r)
        rr[static_cast<std::uint64_t>(r)] =
            run_rep(dist, ell, derived_seed(seed, static_cast<std::uint64_t>(r)));
    return reduce(dist, ell, reps, rr);
}

}  // namespace stp
