#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vtwin/bessel.hpp"

#include <cmath>

using namespace vtwin;

TEST_CASE("agrees with the standard library over [0, 200]")
{
    double worst = 0.0;
    for (int n = 0; n <= 40; ++n)
    {
        for (double x = 0.0; x <= 200.0; x += 0.173)
        {
            const double ref = std::cyl_bessel_j(static_cast<double>(n), x);
            const double err = std::abs(bessel_j(n, x) - ref) / std::max(std::abs(ref), 1e-3);
            worst = std::max(worst, err);
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("values at the origin")
{
    CHECK(bessel_j(0, 0.0) == 1.0);
    for (int n = 1; n < 6; ++n)
    {
        CHECK(bessel_j(n, 0.0) == 0.0);
        CHECK(bessel_j(-n, 0.0) == 0.0);
    }
}

TEST_CASE("negative order and argument parity")
{
    for (double x : {0.3, 2.5, 17.0})
    {
        for (int n = 0; n < 5; ++n)
        {
            const double sign = n % 2 == 0 ? 1.0 : -1.0;
            CHECK(bessel_j(-n, x) == doctest::Approx(sign * bessel_j(n, x)).epsilon(1e-14));
            CHECK(bessel_j(n, -x) == doctest::Approx(sign * bessel_j(n, x)).epsilon(1e-14));
        }
    }
}

TEST_CASE("derivative identity")
{
    for (double x : {0.1, 1.0, 7.3, 50.0})
    {
        const double h = 1e-5;
        for (int n = 0; n < 4; ++n)
        {
            const double fd = (bessel_j(n, x + h) - bessel_j(n, x - h)) / (2.0 * h);
            CHECK(bessel_j_prime(n, x) == doctest::Approx(fd).epsilon(1e-7));
        }
    }
}

TEST_CASE("order table is consistent with single evaluations")
{
    const auto table = bessel_j_orders(12, 9.5);
    REQUIRE(table.size() == 13);
    for (int n = 0; n <= 12; ++n)
    {
        CHECK(table[static_cast<std::size_t>(n)] == doctest::Approx(std::cyl_bessel_j(n, 9.5)).epsilon(1e-12));
    }
}

TEST_CASE("tiny arguments use the series")
{
    CHECK(bessel_j(1, 1e-12) == doctest::Approx(5e-13).epsilon(1e-12));
    CHECK(bessel_j(2, 1e-9) == doctest::Approx(1.25e-19).epsilon(1e-9));
}
