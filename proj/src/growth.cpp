#include "stp/growth.hpp"

#include <cmath>
#include <stdexcept>

namespace stp {

GrowthFunction GrowthFunction::n_log_n() { return {Kind::NLogN, 0.0}; }

GrowthFunction GrowthFunction::power(double a) {
    if (!(a > 1)) throw std::domain_error("GrowthFunction::power: need a > 1");
    return {Kind::Power, a};
}

GrowthFunction GrowthFunction::double_exp(double gamma) {
    if (!(gamma > 0)) throw std::domain_error("GrowthFunction::double_exp: need gamma > 0");
    return {Kind::DoubleExp, gamma};
}

double psi_log2(const GrowthFunction& psi, std::uint64_t n) {
    if (n < 2) throw std::domain_error("psi_log2: need n >= 2");
    double nd = static_cast<double>(n);
    switch (psi.kind) {
        case GrowthFunction::Kind::NLogN:
            return std::log2(nd) + std::log2(std::log(nd));
        case GrowthFunction::Kind::Power:
            return psi.param * std::log2(nd);
        case GrowthFunction::Kind::DoubleExp:
            return std::pow(nd, psi.param);
    }
    throw std::logic_error("psi_log2: unreachable");
}

RegimeVerdict classify(const GrowthFunction& psi, BetaClass beta_class,
                       Potential potential) {
    const char* family;
    int regime;  // 0 slow, 1 gamma in [1/2,1), 2 gamma >= 1
    if (psi.kind == GrowthFunction::Kind::DoubleExp && psi.param >= 1.0) {
        regime = 2;
        family = "2^(n^gamma) with gamma >= 1";
    } else if (psi.kind == GrowthFunction::Kind::DoubleExp && psi.param >= 0.5) {
        regime = 1;
        family = "2^(n^gamma) with gamma in [1/2,1)";
    } else {
        regime = 0;
        family = "slow growth (n log n, n^a, or 2^(n^gamma) with gamma < 1/2)";
    }

    bool full;
    switch (regime) {
        case 0: full = true; break;
        case 1: full = beta_class != BetaClass::FinitePositive; break;
        default: full = beta_class == BetaClass::Zero; break;
    }

    const char* which = (potential == Potential::Phi)
                            ? "the dyadic-payoff level set"
                            : "the 1/x level set";
    const char* bc = beta_class == BetaClass::Zero ? "beta = 0"
                     : beta_class == BetaClass::FinitePositive ? "finite positive beta"
                                                               : "beta = infinity";
    RegimeVerdict v;
    v.potential = potential;
    v.beta_class = beta_class;
    v.verdict = full ? RegimeVerdict::Verdict::FullDimension
                     : RegimeVerdict::Verdict::Empty;
    v.citation = std::string(which) + " under " + family + " at " + bc +
                 (full ? " has full Hausdorff dimension" : " is empty");
    return v;
}

RatioTrace ratio_trace(DigitStream& stream, const GrowthFunction& psi,
                       std::uint64_t n) {
    RatioTrace trace;
    BigInt s = 0;
    std::uint64_t pos = 0;           // digits fully summed into s
    std::uint64_t pending_one = 0;   // 1-position whose follower needs the next block

    auto emit = [&](std::uint64_t at, const BigInt& value) {
        if (at < 2 || at > n) return;
        // a 1-position that follows a 1-position would arrive twice
        if (!trace.checkpoints.empty() && trace.checkpoints.back().n == at) return;
        double l2s = log2_big(value);
        double l2p = psi_log2(psi, at);
        trace.checkpoints.push_back(RatioCheckpoint{at, l2s, l2p, l2s - l2p});
    };

    std::uint64_t run = 0;
    while (pos < n) {
        Digit d = stream.next();
        ++run;
        if (d != 1) continue;
        std::uint64_t nk = run;
        run = 0;
        // finish the pending follower: S_{p+1} = S_p + 2^{nk-1}
        if (pending_one) {
            emit(pending_one + 1, s + pow2_big(nk - 1));
            pending_one = 0;
        }
        s += pow2_big(nk) - 1;
        pos += nk;
        if (pos <= n) {
            emit(pos, s);
            if (pos < n) pending_one = pos;
        }
    }
    // the last follower needs one more block
    if (pending_one && pending_one + 1 <= n) {
        std::uint64_t extra = 1;
        for (;;) {
            Digit d = stream.next();
            if (d == 1) break;
            ++extra;
        }
        emit(pending_one + 1, s + pow2_big(extra - 1));
    }
    return trace;
}

std::vector<ObstructionRow> obstruction_witness(const BlockDecomposition& blocks,
                                                const GrowthFunction& psi) {
    if (psi.kind != GrowthFunction::Kind::DoubleExp)
        throw std::domain_error("obstruction_witness: psi must be of 2^(n^gamma) kind");
    if (blocks.blocks.size() < 2)
        throw std::domain_error("obstruction_witness: need at least two blocks");

    const double gamma = psi.param;
    std::vector<ObstructionRow> rows;
    BigInt s_prev = pow2_big(blocks.blocks[0]) - 1;
    std::uint64_t pos = blocks.blocks[0];
    for (std::size_t j = 1; j < blocks.blocks.size(); ++j) {
        std::uint64_t nj = blocks.blocks[j];
        BigInt s = s_prev + pow2_big(nj) - 1;
        std::uint64_t prev_pos = pos;
        pos += nj;
        ObstructionRow row;
        row.boundary = j + 1;
        row.position = pos;
        row.sum_ratio_log2 = log2_big(s) - log2_big(s_prev);
        row.psi_step_log2 = psi_log2(psi, pos) - psi_log2(psi, pos - 1);
        row.block_slack = (gamma < 1.0)
                              ? static_cast<double>(nj) /
                                    std::pow(static_cast<double>(prev_pos), 1.0 - gamma)
                              : 0.0;
        // for gamma >= 1, n^gamma - (n-1)^gamma >= gamma (n-1)^{gamma-1} >= 1
        row.step_at_least_one = gamma >= 1.0;
        rows.push_back(row);
        s_prev = s;
    }
    return rows;
}

}  // namespace stp
