#include <doctest.h>

#include <cmath>
#include <initializer_list>

#include "hfsk/marcum.hpp"

using namespace hfsk;

TEST_CASE("Q1(0,w) reduces to the Rayleigh tail") {
    for (double w = 0.0; w <= 10.0; w += 0.25)
        CHECK(marcum_q1(0.0, w) == doctest::Approx(std::exp(-0.5 * w * w)).epsilon(1e-12));
}

TEST_CASE("Q1(v,0) is the full integral") {
    for (double v : {0.0, 0.3, 1.0, 4.0, 25.0}) CHECK(marcum_q1(v, 0.0) == 1.0);
}

TEST_CASE("Q1 point values match the quadrature oracle") {
    // Frozen from the quadrature route (scipy's noncentral chi-square tail
    // agrees to 1e-12).
    const double q11 = marcum_q1(1.0, 1.0);
    CHECK(q11 == doctest::Approx(0.7328798037968203).epsilon(1e-10));
    CHECK(q11 == doctest::Approx(marcum_q1_quadrature(1.0, 1.0)).epsilon(1e-10));
    CHECK(marcum_q1(2.0, 1.0) == doctest::Approx(0.9181076963694061).epsilon(1e-10));
    CHECK(marcum_q1(0.5, 3.0) == doctest::Approx(0.01784367338648221).epsilon(1e-10));
}

TEST_CASE("series agrees with quadrature on a grid") {
    for (double v = 0.0; v <= 8.0; v += 0.5) {
        for (double w = 0.25; w <= 8.0; w += 0.5) {
            const double s = marcum_q1(v, w);
            const double q = marcum_q1_quadrature(v, w);
            CHECK(std::fabs(s - q) < 1e-10);
        }
    }
}

TEST_CASE("monotone in each argument and bounded") {
    double prev = 1.0;
    for (double w = 0.0; w <= 12.0; w += 0.5) {
        const double q = marcum_q1(2.0, w);
        CHECK(q <= prev + 1e-15);
        CHECK(q >= 0.0);
        CHECK(q <= 1.0);
        prev = q;
    }
    prev = 0.0;
    for (double v = 0.0; v <= 12.0; v += 0.5) {
        const double q = marcum_q1(v, 3.0);
        CHECK(q >= prev - 1e-12);
        prev = q;
    }
}

TEST_CASE("saturation for extreme noncentrality") {
    CHECK(marcum_q1(4.5e6, 3.0) == 1.0);
    CHECK(marcum_q1(0.5, 80.0) == 0.0);
}

TEST_CASE("scaled bessel matches reference values on both sides of the switch") {
    // I0(10) = 2815.7166284662544; e^-10 scaling.
    CHECK(bessel_i0_scaled(10.0) == doctest::Approx(2815.7166284662544 * std::exp(-10.0)).epsilon(1e-12));
    // Reference values bracketing the series/asymptotic switch at 15.
    CHECK(bessel_i0_scaled(14.999) == doctest::Approx(0.10390305698478712).epsilon(1e-11));
    CHECK(bessel_i0_scaled(15.001) == doctest::Approx(0.10389600627195948).epsilon(1e-11));
}
