#pragma once

#include <array>
#include <cstdint>

namespace stp {

enum class LogBase { Natural, Base2 };

// One evaluation of the pressure series log sum_j 2^{-t j - q (2^j - 1)}.
// Partials are the weighted averages over the same truncation:
//   dP/dt = -ln2 * E[j],  dP/dq = -ln2 * E[2^j - 1].
struct PressureEvaluation {
    double t = 0;
    double q = 0;
    double value = 0;
    double dP_dt = 0;
    double dP_dq = 0;
    int terms_used = 0;
    double tail_bound = 0;  // relative contribution of the omitted tail
};

PressureEvaluation eval_pressure(double t, double q, double tol = 1e-15,
                                 LogBase base = LogBase::Natural);

// Root t(q) of P(.,q) on the bracket [-q, 1] (sign change guaranteed:
// the j=1 term alone is 1 at the left end, the geometric series caps the
// right end below 1). Bisection then a few Newton polish steps.
struct PressureSolution {
    double q = 0;
    double t_of_q = 0;
    double t_prime = 0;   // -dP_dq / dP_dt at the root
    double residual = 0;  // |P(t(q), q)| achieved
    std::array<double, 2> bracket{};
};

PressureSolution solve_t(double q, double tol = 1e-12,
                         LogBase base = LogBase::Natural);

namespace detail {
// Extended-precision root used by the spectrum solver; optional warm start
// skips bisection when a Newton run from the guess stays in the bracket.
long double solve_t_ld(long double q, const long double* guess = nullptr);
// t'(q) and t(q) in extended precision.
struct RootDerivative {
    long double t;
    long double t_prime;
};
RootDerivative root_derivative_ld(long double q, const long double* guess = nullptr);
}  // namespace detail

}  // namespace stp
