#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vtwin/analytic.hpp"
#include "vtwin/bessel.hpp"
#include "vtwin/error.hpp"

#include <cmath>

using namespace vtwin;

namespace
{
double intensity(const std::array<cplx, 2> &e)
{
    return std::norm(e[0]) + std::norm(e[1]);
}
} // namespace

TEST_CASE("L = 0 has no rho component")
{
    RingSpec r;
    r.L = 0;
    for (double t : {0.0, 0.1, 0.4, 1.2})
    {
        CHECK(std::abs(if_components(r, t, 0.3).e_rho) == 0.0);
    }
}

TEST_CASE("L = 2 vanishes on axis")
{
    RingSpec r;
    r.L = 2;
    const CylindricalField e = if_components(r, 0.0, 0.0);
    CHECK(std::abs(e.e_rho) == 0.0);
    CHECK(std::abs(e.e_phi) == 0.0);
    CHECK(std::abs(e.e_z) == 0.0);
}

TEST_CASE("z to rho ratio carries the 3:2 coefficients")
{
    RingSpec r;
    r.L = 1;
    r.N = 60;
    for (double t : {0.05, 0.2, 0.6})
    {
        const CylindricalField e = if_components(r, t, 0.0);
        const double x = k0 * r.rho_n * std::tan(t);
        const double expected = 1.5 * x * bessel_j(1, x) / (r.L * bessel_j(1, x));
        CHECK(std::abs(e.e_z / e.e_rho) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("z-driven ring swaps the coefficients")
{
    RingSpec rho;
    rho.L = 3;
    RingSpec z = rho;
    z.orientation = RingOrientation::Z;
    const CylindricalField a = if_components(rho, 0.3, 0.2);
    const CylindricalField b = if_components(z, 0.3, 0.2);
    CHECK(std::abs(b.e_rho / a.e_rho) == doctest::Approx(1.5));
    CHECK(std::abs(b.e_z / a.e_z) == doctest::Approx(2.0 / 3.0));
    CHECK(std::arg(b.e_rho / a.e_rho) == doctest::Approx(0.0));
}

TEST_CASE("intermediate field rejects grazing angles")
{
    RingSpec r;
    CHECK_THROWS_AS(if_components(r, pi / 2.0, 0.0), Error);
    CHECK_THROWS_AS(if_transverse(r, 2.0, 0.0), Error);
    CHECK_THROWS_AS(ff_closed_form(r, 1.7, 0.0), Error);
    CHECK_NOTHROW(ff_closed_form(r, pi / 2.0, 0.0));
}

TEST_CASE("L = 1 on axis is purely circular")
{
    RingSpec r;
    r.L = 1;
    const auto e = if_transverse(r, 0.0, 0.7);
    CHECK(std::abs(e[0]) > 0.0);
    CHECK(std::abs(e[1] - cplx{0.0, 1.0} * e[0]) < 1e-15 * std::abs(e[0]));
}

TEST_CASE("L = 3 transverse field vanishes on axis")
{
    RingSpec r;
    r.L = 3;
    CHECK(intensity(if_transverse(r, 0.0, 0.0)) == 0.0);
}

TEST_CASE("transverse intensities are independent of phi")
{
    for (int L = -3; L <= 3; ++L)
    {
        RingSpec r;
        r.L = L;
        for (double t : {0.1, 0.35, 0.8})
        {
            const double ref_if = intensity(if_transverse(r, t, 0.0));
            const double ref_ff = intensity(ff_closed_form(r, t, 0.0));
            const double x = k0 * r.rho_n * std::tan(t);
            const double f = std::abs(prefactors(r, t).f_val) * r.N;
            const double sum = 2.0 * f * f * (std::pow(bessel_j(L - 1, x), 2) + std::pow(bessel_j(L + 1, x), 2));
            CHECK(ref_if == doctest::Approx(sum).epsilon(1e-12));
            for (double p = 0.0; p < two_pi; p += 0.37)
            {
                CHECK(std::abs(intensity(if_transverse(r, t, p)) - ref_if) <= 1e-12 * ref_if);
                CHECK(std::abs(intensity(ff_closed_form(r, t, p)) - ref_ff) <= 1e-12 * std::max(ref_ff, 1e-300));
            }
        }
    }
}

TEST_CASE("charge conjugation swaps the channels")
{
    RingSpec a;
    a.L = 2;
    RingSpec b = a;
    b.L = -2;
    for (double t : {0.0, 0.2, 0.5})
    {
        CHECK(intensity(if_transverse(a, t, 0.4)) == doctest::Approx(intensity(if_transverse(b, t, 0.4))));
        CHECK(intensity(ff_closed_form(a, t, 0.4)) == doctest::Approx(intensity(ff_closed_form(b, t, 0.4))));
    }
}

TEST_CASE("selection rule")
{
    CHECK(onaxis_selection(1));
    CHECK(onaxis_selection(-1));
    CHECK_FALSE(onaxis_selection(0));
    CHECK_FALSE(onaxis_selection(2));
    RingSpec r;
    double peak = 0.0;
    for (double t = 0.0; t < pi / 2.0; t += 0.01)
    {
        peak = std::max(peak, intensity(ff_closed_form(r, t, 0.0)));
    }
    CHECK(intensity(ff_closed_form(r, 0.0, 0.0)) > 0.0);
    for (int L : {0, 2, 3})
    {
        RingSpec s;
        s.L = L;
        CHECK(intensity(ff_closed_form(s, 0.0, 0.0)) == 0.0);
    }
    RingSpec m;
    m.L = -1;
    CHECK(intensity(ff_closed_form(m, 0.0, 0.0)) > 0.0);
}

TEST_CASE("prefactors are finite and nonzero")
{
    RingSpec r;
    const PrefactorState s = prefactors(r, 0.3);
    CHECK(std::isfinite(std::abs(s.f_val)));
    CHECK(std::abs(s.f_val) > 0.0);
    CHECK(std::abs(s.g_val) > 0.0);
    CHECK(std::abs(prefactor_f(r, 0.0, 2.0)) == doctest::Approx(k0 / 4.0));
    CHECK_THROWS_AS(prefactor_f(r, 0.0, 0.0), Error);
}

TEST_CASE("ring validation")
{
    RingSpec r;
    r.N = 0;
    CHECK_THROWS_AS(validate(r), Error);
    r = RingSpec{};
    r.theta_q = pi / 2.0;
    CHECK_THROWS_AS(validate(r), Error);
}

TEST_CASE("cross-section profiles")
{
    const auto rows = fig2_profiles({0, 1, 2, 3}, RingSpec{}, na_samples(96));
    CHECK(rows.size() == 4 * 96);
    const auto first = [&](int c) {
        for (const Fig2Row &r : rows)
        {
            if (r.charge == c)
            {
                return r;
            }
        }
        return Fig2Row{};
    };
    // Beam charge 0: both curves peak at the centre.
    CHECK(first(0).intensity_if == doctest::Approx(1.0));
    CHECK(first(0).intensity_ff == doctest::Approx(1.0));
    for (int c = 1; c <= 3; ++c)
    {
        CHECK(first(c).intensity_if == 0.0);
    }
    CHECK(encircled_fraction(rows, 2, 0.3, true) > encircled_fraction(rows, 2, 0.3, false));
    CHECK(encircled_fraction(rows, 3, 0.3, true) > encircled_fraction(rows, 3, 0.3, false));
}

TEST_CASE("L = 1 far field decays away from the axis")
{
    RingSpec r;
    r.L = 1;
    double prev = intensity(ff_closed_form(r, 0.0, 0.0));
    for (double t = 0.005; t < 0.06; t += 0.005)
    {
        const double cur = intensity(ff_closed_form(r, t, 0.0));
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("encircled fraction bounds")
{
    const auto rows = fig2_profiles({1}, RingSpec{}, na_samples(50));
    CHECK(encircled_fraction(rows, 1, 0.0, true) == 0.0);
    CHECK(encircled_fraction(rows, 1, 0.99, false) == doctest::Approx(1.0));
    CHECK_THROWS_AS(encircled_fraction(rows, 5, 0.3, true), Error);
}
