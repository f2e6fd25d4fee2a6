#pragma once

#include <cstdint>
#include <vector>

namespace stp {

// One point of the Birkhoff spectrum: dimension = inf_q { t(q) + q*alpha },
// attained where t'(q0) = -alpha. alpha = 1 is the endpoint with the
// infimum at q -> infinity and dimension 0.
struct SpectrumSample {
    double alpha = 0;
    double q0 = 0;           // minimizing q; floor-clamped when below range
    double t_q0 = 0;
    double dimension = 0;    // in [0, 1]
    bool q0_at_infinity = false;  // set only for alpha = 1
};

SpectrumSample dim_at_alpha(double alpha, double tol = 1e-12);

std::vector<SpectrumSample> spectrum_curve(double alpha_min, double alpha_max,
                                           int steps, int threads = 1);

// Serial reference row loop, kept for testing the parallel kernel against.
std::vector<SpectrumSample> spectrum_curve_serial(double alpha_min,
                                                  double alpha_max, int steps);

}  // namespace stp
