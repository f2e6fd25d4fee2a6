#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "stp/pressure.hpp"
#include "stp/spectrum.hpp"

using namespace stp;

// frozen from the dense-grid oracle (extended-precision series)
static const double kDimAtThreeHalves = 0.885905138939565;

TEST_CASE("endpoint alpha = 1 is dimension zero at infinity") {
    SpectrumSample s = dim_at_alpha(1.0);
    CHECK(s.dimension == 0.0);
    CHECK(s.q0_at_infinity);
    CHECK_THROWS_AS(dim_at_alpha(0.5), std::domain_error);
}

TEST_CASE("dimension at alpha = 3/2 matches the grid oracle") {
    long double oracle = oracles::dim_grid(1.5L, -8.0L, 4.0L, 600, 600);
    CHECK(std::fabs(static_cast<double>(oracle) - kDimAtThreeHalves) < 1e-8);
    SpectrumSample s = dim_at_alpha(1.5);
    CHECK(s.dimension == doctest::Approx(kDimAtThreeHalves).epsilon(1e-10));
    CHECK(std::fabs(s.dimension - static_cast<double>(oracle)) <= 1e-8);
}

TEST_CASE("dimension approaches one for huge alpha") {
    SpectrumSample s = dim_at_alpha(1e4);
    CHECK(s.dimension > 0.99);
    CHECK(s.dimension <= 1.0);
}

TEST_CASE("legendre envelope over a probe grid") {
    for (double alpha : {1.2, 1.5, 2.0, 5.0, 20.0, 300.0}) {
        SpectrumSample s = dim_at_alpha(alpha);
        for (double lq = -20.0; lq <= 6.0; lq += 0.5) {
            double q = std::exp2(lq);
            PressureSolution sol = solve_t(q);
            REQUIRE(s.dimension <= sol.t_of_q + q * alpha + 1e-10);
        }
    }
}

TEST_CASE("monotone pairing of alpha and q0") {
    double prev_q0 = HUGE_VAL;
    for (double alpha : {1.1, 1.5, 2.0, 4.0, 16.0, 64.0}) {
        SpectrumSample s = dim_at_alpha(alpha);
        REQUIRE(s.q0 < prev_q0);
        prev_q0 = s.q0;
    }
}

TEST_CASE("dimension stays within the unit interval far out") {
    for (double alpha : {1.0, 1.0001, 3.0, 1e2, 1e4, 1e6}) {
        SpectrumSample s = dim_at_alpha(alpha);
        REQUIRE(s.dimension >= 0.0);
        REQUIRE(s.dimension <= 1.0);
    }
}

TEST_CASE("round trip through the gibbs pairing") {
    for (double q : {0.5, 1.0, 2.0}) {
        PressureSolution sol = solve_t(q);
        double alpha = -sol.t_prime;
        SpectrumSample s = dim_at_alpha(alpha);
        REQUIRE(std::fabs(s.dimension - (sol.t_of_q + q * alpha)) <= 1e-10);
    }
}

TEST_CASE("curve rows are sorted with the endpoint first") {
    auto rows = spectrum_curve(1.0, 2.0, 3);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].dimension == 0.0);
    CHECK(rows[0].alpha == 1.0);
    CHECK(rows[1].alpha == 1.5);
    CHECK(rows[2].alpha == 2.0);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(rows[i].alpha > rows[i - 1].alpha);
    CHECK_THROWS_AS(spectrum_curve(2.0, 1.0, 5), std::domain_error);
    CHECK_THROWS_AS(spectrum_curve(1.0, 2.0, 1), std::domain_error);
}

TEST_CASE("curve is nondecreasing and concave on a coarse grid") {
    auto rows = spectrum_curve(1.0, 40.0, 60);
    for (std::size_t i = 1; i < rows.size(); ++i)
        REQUIRE(rows[i].dimension >= rows[i - 1].dimension);
    for (std::size_t i = 1; i + 1 < rows.size(); ++i) {
        double d2 = rows[i + 1].dimension - 2.0 * rows[i].dimension +
                    rows[i - 1].dimension;
        REQUIRE(d2 <= 1e-9);
    }
}

TEST_CASE("parallel rows equal the serial reference") {
    auto serial = spectrum_curve_serial(1.0, 10.0, 21);
    auto parallel = spectrum_curve(1.0, 10.0, 21, 4);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].alpha == parallel[i].alpha);
        CHECK(serial[i].q0 == parallel[i].q0);
        CHECK(serial[i].dimension == parallel[i].dimension);
    }
}
