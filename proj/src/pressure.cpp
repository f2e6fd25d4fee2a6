#include "stp/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace stp {

namespace {

constexpr long double kLn2 = 0.693147180559945309417232121458L;

struct SeriesStats {
    long double value;   // natural-log pressure
    long double dP_dt;   // -ln2 E[j]
    long double dP_dq;   // -ln2 E[2^j - 1]
    int terms;
    long double tail;    // relative tail bound
};

constexpr int kMaxTerms = 4096;

// log2(2^j - 1) - j, tabulated once
const long double* log2_phi_table() {
    static const std::vector<long double> table = [] {
        std::vector<long double> t(kMaxTerms + 1, 0.0L);
        for (int j = 1; j <= kMaxTerms; ++j)
            t[static_cast<std::size_t>(j)] =
                std::log1p(-std::exp2(-static_cast<long double>(j))) / kLn2;
        return t;
    }();
    return table.data();
}

// Evaluated in the log2 domain with a max shift so that strongly negative t
// (where early terms exceed double range) and tiny q (where thousands of
// terms matter) both stay finite.
SeriesStats series_stats(long double t, long double q, long double tol) {
    int j_cap = 64;
    if (q < 1)
        j_cap = std::max<int>(j_cap, static_cast<int>(std::ceil(std::log2(1.0 / static_cast<double>(q)))) + 64);
    if (t < 0)
        j_cap = std::max<int>(j_cap, static_cast<int>(std::ceil(std::log2(static_cast<double>(-t) / static_cast<double>(q)))) + 64);
    j_cap = std::min(j_cap, kMaxTerms);

    const long double* lgphi = log2_phi_table();
    std::vector<long double> e;
    for (;;) {
        e.resize(static_cast<std::size_t>(j_cap));
        long double p2 = 2.0L;
        for (int j = 1; j <= j_cap; ++j) {
            e[static_cast<std::size_t>(j - 1)] = -t * j - q * (p2 - 1.0L);
            p2 = (j < 16300) ? p2 * 2.0L : HUGE_VALL;
        }
        long double m = e[0];
        for (long double x : e) m = std::max(m, x);

        long double s = 0, sj = 0, sphi = 0;
        for (int j = 1; j <= j_cap; ++j) {
            long double ej = e[static_cast<std::size_t>(j - 1)];
            long double shifted = ej - m;
            if (shifted > -16200.0L) {
                long double w = std::exp2(shifted);
                s += w;
                sj += j * w;
            }
            // (2^j - 1) w, formed in log2 space to dodge 0*inf
            long double lg = shifted + j + lgphi[j];
            if (lg > -16200.0L) sphi += std::exp2(lg);
        }

        long double last = std::exp2(e.back() - m);
        long double prev = std::exp2(e[e.size() - 2] - m);
        long double ratio = (prev > 0) ? last / prev : 0.0L;
        // geometric tail bound relative to the partial sum
        long double tail = 0.0L;
        if (last > 0) tail = (ratio < 0.5L) ? 2.0L * last * ratio / s : HUGE_VALL;
        if (tail <= tol || j_cap >= kMaxTerms)
            return SeriesStats{kLn2 * (m + std::log2(s)), -kLn2 * sj / s,
                               -kLn2 * sphi / s, j_cap, tail};
        j_cap = std::min(j_cap + 64, kMaxTerms);
    }
}

long double pressure_ld(long double t, long double q) {
    return series_stats(t, q, 1e-18L).value;
}

}  // namespace

PressureEvaluation eval_pressure(double t, double q, double tol, LogBase base) {
    if (!(q > 0)) throw std::domain_error("eval_pressure: q must be positive");
    if (!(tol > 0)) throw std::domain_error("eval_pressure: tol must be positive");
    SeriesStats s = series_stats(t, q, static_cast<long double>(tol));
    long double scale = (base == LogBase::Natural) ? 1.0L : 1.0L / kLn2;
    PressureEvaluation out;
    out.t = t;
    out.q = q;
    out.value = static_cast<double>(s.value * scale);
    out.dP_dt = static_cast<double>(s.dP_dt * scale);
    out.dP_dq = static_cast<double>(s.dP_dq * scale);
    out.terms_used = s.terms;
    out.tail_bound = static_cast<double>(s.tail);
    return out;
}

namespace detail {

long double solve_t_ld(long double q, const long double* guess) {
    const long double lo0 = -q, hi0 = 1.0L;
    // 1e-14 absolute where representable; widths below one ulp of the
    // endpoint magnitude are unreachable, so floor at a few ulps of q
    const long double width = std::max(1e-14L, q * 0x1p-60L);
    if (guess && *guess > lo0 && *guess < hi0) {
        // Newton from the warm start; fall through on any sign of trouble
        long double t = *guess;
        for (int i = 0; i < 8; ++i) {
            SeriesStats s = series_stats(t, q, 1e-18L);
            long double step = s.value / s.dP_dt;
            long double tn = t - step;
            if (!(tn >= lo0 && tn < hi0)) { t = lo0 - 1; break; }
            t = tn;
            if (std::fabs(step) < 1e-17L * std::max(1.0L, std::fabs(t))) break;
        }
        if (t >= lo0 && t < hi0 &&
            std::fabs(pressure_ld(t, q)) < 1e-15L * std::max(1.0L, q))
            return t;
    }
    long double lo = lo0, hi = hi0;
    for (int i = 0; i < 300 && hi - lo > width; ++i) {
        long double mid = 0.5L * (lo + hi);
        if (!(mid > lo && mid < hi)) break;  // interval below one ulp
        if (pressure_ld(mid, q) > 0) lo = mid;
        else hi = mid;
    }
    long double t = 0.5L * (lo + hi);
    for (int i = 0; i < 5; ++i) {
        SeriesStats s = series_stats(t, q, 1e-18L);
        long double tn = t - s.value / s.dP_dt;
        if (tn < lo0 || tn >= hi0) break;
        t = tn;
    }
    return t;
}

RootDerivative root_derivative_ld(long double q, const long double* guess) {
    long double t = solve_t_ld(q, guess);
    SeriesStats s = series_stats(t, q, 1e-18L);
    return RootDerivative{t, -s.dP_dq / s.dP_dt};
}

}  // namespace detail

PressureSolution solve_t(double q, double tol, LogBase base) {
    if (!(q > 0)) throw std::domain_error("solve_t: q must be positive");
    if (!(tol > 0)) throw std::domain_error("solve_t: tol must be positive");
    (void)base;  // the root and its derivative are base-invariant
    long double t = detail::solve_t_ld(static_cast<long double>(q));
    SeriesStats s = series_stats(t, static_cast<long double>(q), 1e-18L);
    PressureSolution out;
    out.q = q;
    out.t_of_q = static_cast<double>(t);
    out.t_prime = static_cast<double>(-s.dP_dq / s.dP_dt);
    out.residual = static_cast<double>(std::fabs(s.value));
    out.bracket = {-q, 1.0};
    if (out.residual > tol)
        throw std::runtime_error("solve_t: residual above tolerance");
    return out;
}

}  // namespace stp
