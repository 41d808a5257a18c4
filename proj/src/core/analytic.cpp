#include "vtwin/analytic.hpp"

#include "vtwin/bessel.hpp"
#include "vtwin/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace vtwin
{
namespace
{
// i^n exactly.
cplx ipow(int n)
{
    switch (((n % 4) + 4) % 4)
    {
    case 0:
        return {1.0, 0.0};
    case 1:
        return {0.0, 1.0};
    case 2:
        return {-1.0, 0.0};
    default:
        return {0.0, -1.0};
    }
}

cplx cis(double a)
{
    return {std::cos(a), std::sin(a)};
}

// (rho-coefficient, z-coefficient) of the induced intermediate field.
std::pair<double, double> coefficients(RingOrientation o)
{
    return o == RingOrientation::Rho ? std::pair{2.0, 3.0} : std::pair{3.0, 2.0};
}

void check_if_theta(double theta)
{
    if (!(theta >= 0.0 && theta < pi / 2.0))
    {
        fail(ErrorCode::InvalidArgument, "intermediate field needs 0 <= theta < pi/2 (tan(theta) diverges)");
    }
}
} // namespace

void validate(const RingSpec &ring)
{
    require(ring.N >= 1, "ring: N must be >= 1");
    require(ring.Q_ring >= 1, "ring: Q_ring must be >= 1");
    require(ring.rho_n > 0.0, "ring: rho_n must be positive");
    require(ring.r_q > 0.0, "ring: r_q must be positive");
    require(ring.theta_q > 0.0 && ring.theta_q < pi / 2.0, "ring: theta_q must lie in (0, pi/2)");
    require(ring.z_if > 0.0, "ring: z_if must be positive");
    require(ring.r_ff > 0.0, "ring: r_ff must be positive");
}

cplx prefactor_f(const RingSpec &ring, double rho, double z)
{
    require(z > 0.0, "prefactor f: z must be positive");
    const double phase = k0 * z * (1.0 + rho * rho / (2.0 * z * z));
    return cplx{0.0, -k0} * ring.alpha1 * ring.e_nf * cis(phase) / (z * z);
}

PrefactorState prefactors(const RingSpec &ring, double theta)
{
    PrefactorState s;
    const double z = ring.z_if;
    const double rho = theta < pi / 2.0 ? z * std::tan(theta) : 0.0;
    s.f_val = prefactor_f(ring, rho, z);

    const double rho_q = ring.r_q * std::sin(ring.theta_q);
    const double z_q = ring.r_q * std::cos(ring.theta_q);
    const cplx f_q = prefactor_f(ring, rho_q, z_q);
    const double phase = k0 * (ring.r_ff - ring.r_q * std::cos(theta) * std::cos(ring.theta_q));
    s.g_val = ring.alpha2 * k0 * k0 * static_cast<double>(ring.N) * f_q * cis(phase) / ring.r_ff;
    return s;
}

CylindricalField if_components(const RingSpec &ring, double theta, double phi)
{
    check_if_theta(theta);
    const int L = ring.L;
    const double x = k0 * ring.rho_n * std::tan(theta);
    const cplx f = prefactors(ring, theta).f_val;
    const double n = static_cast<double>(ring.N);
    const auto [c_rho, c_z] = coefficients(ring.orientation);

    const double jl = bessel_j(L, x);
    const double jm = bessel_j(L - 1, x);
    const double jp = bessel_j(L + 1, x);
    // L J_L(x) / x without the x -> 0 singularity.
    const double l_jl_over_x = 0.5 * (jm + jp);
    const double jl_prime = 0.5 * (jm - jp);
    const cplx winding = cis(L * phi);

    CylindricalField e;
    e.e_rho = -c_rho * ipow(L) * f * n * l_jl_over_x * winding;
    e.e_phi = c_rho * ipow(L - 1) * f * n * jl_prime * winding;
    e.e_z = c_z * ipow(L) * f * n * jl * winding;
    return e;
}

std::array<cplx, 2> if_transverse(const RingSpec &ring, double theta, double phi)
{
    check_if_theta(theta);
    const int L = ring.L;
    const double x = k0 * ring.rho_n * std::tan(theta);
    const cplx f = prefactors(ring, theta).f_val;
    // The printed transverse form carries the rho-driven coefficient 2 as N f;
    // the z-driven ring scales it by 3/2.
    const double scale = coefficients(ring.orientation).first / 2.0;
    const cplx a = scale * static_cast<double>(ring.N) * f;
    const cplx lhcp = a * bessel_j(L - 1, x) * cis((L - 1) * phi);
    const cplx rhcp = a * bessel_j(L + 1, x) * cis((L + 1) * phi);
    return {lhcp + rhcp, cplx{0.0, 1.0} * (lhcp - rhcp)};
}

std::array<cplx, 2> ff_closed_form(const RingSpec &ring, double theta, double phi)
{
    if (!(theta >= 0.0 && theta <= pi / 2.0))
    {
        fail(ErrorCode::InvalidArgument, "far field needs 0 <= theta <= pi/2");
    }
    const int L = ring.L;
    const double sq = std::sin(ring.theta_q);
    const double a_in = k0 * ring.rho_n * sq;
    const double a_out = k0 * ring.r_q * std::sin(theta) * sq;
    const double scale = coefficients(ring.orientation).first / 2.0;
    const cplx g = scale * static_cast<double>(ring.Q_ring) * prefactors(ring, theta).g_val;
    const cplx lhcp = g * bessel_j(L - 1, a_in) * bessel_j(L - 1, a_out) * cis((L - 1) * phi);
    const cplx rhcp = g * bessel_j(L + 1, a_in) * bessel_j(L + 1, a_out) * cis((L + 1) * phi);
    return {lhcp + rhcp, cplx{0.0, 1.0} * (lhcp - rhcp)};
}

bool onaxis_selection(int L)
{
    return L - 1 == 0 || L + 1 == 0;
}

std::vector<double> na_samples(int count, double na_max)
{
    require(count >= 2, "na_samples: need at least two samples");
    require(na_max > 0.0 && na_max < 1.0, "na_samples: na_max must lie in (0, 1)");
    std::vector<double> out(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
    {
        out[static_cast<std::size_t>(i)] = na_max * i / (count - 1);
    }
    return out;
}

std::vector<Fig2Row> fig2_profiles(const std::vector<int> &charges, const RingSpec &ring,
                                   const std::vector<double> &na)
{
    validate(ring);
    for (double s : na)
    {
        require(s >= 0.0 && s < 1.0, "fig2_profiles: NA samples must lie in [0, 1)");
    }
    std::vector<Fig2Row> rows;
    for (int charge : charges)
    {
        RingSpec r = ring;
        r.L = charge + 1;
        const std::size_t first = rows.size();
        double peak_if = 0.0;
        double peak_ff = 0.0;
        for (double s : na)
        {
            const double theta = std::asin(s);
            const auto e_if = if_transverse(r, theta, 0.0);
            const auto e_ff = ff_closed_form(r, theta, 0.0);
            Fig2Row row;
            row.charge = charge;
            row.na = s;
            row.intensity_if = std::norm(e_if[0]) + std::norm(e_if[1]);
            row.intensity_ff = std::norm(e_ff[0]) + std::norm(e_ff[1]);
            peak_if = std::max(peak_if, row.intensity_if);
            peak_ff = std::max(peak_ff, row.intensity_ff);
            rows.push_back(row);
        }
        for (std::size_t i = first; i < rows.size(); ++i)
        {
            if (peak_if > 0.0)
            {
                rows[i].intensity_if /= peak_if;
            }
            if (peak_ff > 0.0)
            {
                rows[i].intensity_ff /= peak_ff;
            }
        }
    }
    return rows;
}

double encircled_fraction(const std::vector<Fig2Row> &rows, int charge, double na_cut, bool far_field)
{
    std::vector<double> theta;
    std::vector<double> power;
    for (const Fig2Row &r : rows)
    {
        if (r.charge == charge)
        {
            const double t = std::asin(r.na);
            theta.push_back(t);
            power.push_back((far_field ? r.intensity_ff : r.intensity_if) * std::sin(t));
        }
    }
    require(theta.size() >= 2, "encircled_fraction: charge not present in table");
    const double cut = std::asin(std::clamp(na_cut, 0.0, 1.0));
    double inside = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < theta.size(); ++i)
    {
        const double h = theta[i + 1] - theta[i];
        const double seg = 0.5 * h * (power[i] + power[i + 1]);
        total += seg;
        if (theta[i + 1] <= cut)
        {
            inside += seg;
        }
        else if (theta[i] < cut)
        {
            const double t = (cut - theta[i]) / h;
            const double p_cut = power[i] + t * (power[i + 1] - power[i]);
            inside += 0.5 * (cut - theta[i]) * (power[i] + p_cut);
        }
    }
    if (!(total > 0.0))
    {
        fail(ErrorCode::UndefinedRatio, "encircled_fraction: profile carries no energy");
    }
    return inside / total;
}

} // namespace vtwin
