#include "stp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "stp/pressure.hpp"

namespace stp {

namespace {

// log2(q) search range. The floor extends far below the double-underflow
// point of 1 - t(q); past it the objective is flat at dimension 1 within
// double resolution, so the minimizer is clamped there instead of failing.
constexpr long double kLog2QFloor = -958.0L;
constexpr long double kLog2QCeil = 60.0L;

}  // namespace

SpectrumSample dim_at_alpha(double alpha, double tol) {
    if (!(alpha >= 1)) throw std::domain_error("dim_at_alpha: alpha must be >= 1");
    if (!(tol > 0)) throw std::domain_error("dim_at_alpha: tol must be positive");

    SpectrumSample s;
    s.alpha = alpha;
    if (alpha == 1.0) {
        // level set of digit-1 frequency one; infimum at q -> infinity
        s.q0_at_infinity = true;
        s.q0 = HUGE_VAL;
        s.t_q0 = -HUGE_VAL;
        s.dimension = 0.0;
        return s;
    }

    const long double a = static_cast<long double>(alpha);
    long double warm = 0;
    bool have_warm = false;

    // geometric expansion from [-20, 20] until t' straddles -alpha
    long double lo = -20.0L, hi = 20.0L;
    auto eval = [&](long double u, long double& t_here) {
        long double q = std::exp2(u);
        auto rd = stp::detail::root_derivative_ld(q, have_warm ? &warm : nullptr);
        warm = rd.t;
        have_warm = true;
        t_here = rd.t;
        return rd.t_prime;
    };
    long double tdum;
    while (eval(lo, tdum) > -a && lo > kLog2QFloor)
        lo = std::max(kLog2QFloor, lo * 2.0L);
    while (eval(hi, tdum) < -a && hi < kLog2QCeil)
        hi = std::min(kLog2QCeil, hi * 2.0L);

    long double f_lo = eval(lo, tdum) + a;
    long double f_hi = eval(hi, tdum) + a;
    bool clamped_low = f_lo > 0;   // |t'| < alpha even at the floor
    bool clamped_high = f_hi < 0;  // alpha - 1 below resolution

    long double u0;
    if (clamped_low) u0 = kLog2QFloor;
    else if (clamped_high) u0 = kLog2QCeil;
    else {
        // Illinois regula falsi on h(u) = t'(2^u) + alpha (increasing)
        int side = 0;
        for (int iter = 0; iter < 90 && hi - lo > 1e-11L; ++iter) {
            long double u = (f_hi != f_lo)
                                ? (lo * f_hi - hi * f_lo) / (f_hi - f_lo)
                                : 0.5L * (lo + hi);
            if (!(u > lo && u < hi)) u = 0.5L * (lo + hi);
            long double f = eval(u, tdum) + a;
            if (f < 0) {
                lo = u;
                f_lo = f;
                if (side == -1) f_hi *= 0.5L;
                side = -1;
            } else {
                hi = u;
                f_hi = f;
                if (side == 1) f_lo *= 0.5L;
                side = 1;
            }
        }
        u0 = 0.5L * (lo + hi);
    }

    long double q0 = std::exp2(u0);
    auto rd = stp::detail::root_derivative_ld(q0, have_warm ? &warm : nullptr);
    long double dim = rd.t + q0 * a;
    s.q0 = static_cast<double>(q0);
    s.t_q0 = static_cast<double>(rd.t);
    s.dimension = std::clamp(static_cast<double>(dim), 0.0, 1.0);
    return s;
}

std::vector<SpectrumSample> spectrum_curve_serial(double alpha_min,
                                                  double alpha_max, int steps) {
    if (!(alpha_min >= 1) || !(alpha_min < alpha_max) || steps < 2)
        throw std::domain_error("spectrum_curve: need 1 <= alpha_min < alpha_max, steps >= 2");
    std::vector<SpectrumSample> rows(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) {
        double alpha = alpha_min + (alpha_max - alpha_min) * i / (steps - 1);
        rows[static_cast<std::size_t>(i)] = dim_at_alpha(alpha);
    }
    return rows;
}

std::vector<SpectrumSample> spectrum_curve(double alpha_min, double alpha_max,
                                           int steps, int threads) {
    if (threads <= 1) return spectrum_curve_serial(alpha_min, alpha_max, steps);
    if (!(alpha_min >= 1) || !(alpha_min < alpha_max) || steps < 2)
        throw std::domain_error("spectrum_curve: need 1 <= alpha_min < alpha_max, steps >= 2");
    std::vector<SpectrumSample> rows(static_cast<std::size_t>(steps));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (int i = 0; i < steps; ++i) {
        double alpha = alpha_min + (alpha_max - alpha_min) * i / (steps - 1);
        rows[static_cast<std::size_t>(i)] = dim_at_alpha(alpha);
    }
    return rows;
}

}  // namespace stp
