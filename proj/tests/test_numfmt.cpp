#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vtwin/numfmt.hpp"

#include <cmath>
#include <limits>
#include <random>

using namespace vtwin;

TEST_CASE("twelve significant digits")
{
    CHECK(fmt_num(0.5) == "0.5");
    CHECK(fmt_num(1.0 / 3.0) == "0.333333333333");
    CHECK(fmt_num(-0.0) == "0");
    CHECK(fmt_num(1.23456789012345e-5) == "1.23456789012e-05");
    CHECK(fmt_num(253.302959106) == "253.302959106");
}

TEST_CASE("exact form round-trips")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1e3, 1e3);
    for (int i = 0; i < 1000; ++i)
    {
        const double v = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        double back = 0.0;
        REQUIRE(parse_double(fmt_exact(v), back));
        CHECK(back == v);
    }
}

TEST_CASE("round12 matches the printed value")
{
    double printed = 0.0;
    REQUIRE(parse_double(fmt_num(M_PI), printed));
    CHECK(round12(M_PI) == printed);
}

TEST_CASE("parsing")
{
    double d = 0.0;
    CHECK(parse_double(" +1.5e3 ", d));
    CHECK(d == 1500.0);
    CHECK_FALSE(parse_double("1.5x", d));
    CHECK_FALSE(parse_double("", d));
    long long n = 0;
    CHECK(parse_int("-42", n));
    CHECK(n == -42);
    CHECK_FALSE(parse_int("4.2", n));
    const auto parts = split(" a, b ,c ", ',');
    REQUIRE(parts.size() == 3);
    CHECK(parts[0] == "a");
    CHECK(parts[1] == "b");
    CHECK(parts[2] == "c");
}
