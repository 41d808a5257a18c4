#pragma once

#include "vtwin/analytic.hpp"
#include "vtwin/dipole.hpp"

#include <cmath>
#include <functional>

namespace vtwin::test
{

// Map whose Cartesian transverse field (E_x, E_y) is given per direction.
inline FarFieldMap map_from_xy(const FarFieldMap &grid,
                               const std::function<std::array<cplx, 2>(double, double)> &field)
{
    FarFieldMap m = grid;
    for (std::size_t it = 0; it < m.n_theta(); ++it)
    {
        const double t = m.theta[it];
        for (std::size_t ip = 0; ip < m.n_phi(); ++ip)
        {
            const double p = m.phi[ip];
            const auto e = field(t, p);
            const std::size_t i = m.index(it, ip);
            m.e_theta[i] = std::cos(t) * (e[0] * std::cos(p) + e[1] * std::sin(p));
            m.e_phi[i] = -e[0] * std::sin(p) + e[1] * std::cos(p);
            m.intensity[i] = std::norm(m.e_theta[i]) + std::norm(m.e_phi[i]);
        }
    }
    return m;
}

// Scalar intensity map I(theta) with zero field components.
inline FarFieldMap map_from_intensity(const FarFieldMap &grid, const std::function<double(double)> &intensity)
{
    FarFieldMap m = grid;
    for (std::size_t it = 0; it < m.n_theta(); ++it)
    {
        for (std::size_t ip = 0; ip < m.n_phi(); ++ip)
        {
            const std::size_t i = m.index(it, ip);
            m.e_theta[i] = std::sqrt(intensity(m.theta[it]));
            m.e_phi[i] = 0.0;
            m.intensity[i] = std::norm(m.e_theta[i]);
        }
    }
    return m;
}

// Circularly polarized Gaussian of divergence `waist` (theta/phi basis).
inline FarFieldMap gaussian_map(const FarFieldMap &grid, double waist, int s)
{
    FarFieldMap m = grid;
    for (std::size_t it = 0; it < m.n_theta(); ++it)
    {
        const double g = std::exp(-(m.theta[it] / waist) * (m.theta[it] / waist));
        for (std::size_t ip = 0; ip < m.n_phi(); ++ip)
        {
            const std::size_t i = m.index(it, ip);
            const cplx base = g * std::exp(cplx{0.0, s * m.phi[ip]}) / std::sqrt(2.0);
            m.e_theta[i] = base;
            m.e_phi[i] = cplx{0.0, static_cast<double>(s)} * base;
            m.intensity[i] = std::norm(m.e_theta[i]) + std::norm(m.e_phi[i]);
        }
    }
    return m;
}

inline FarFieldMap closed_form_map(const RingSpec &ring, const FarFieldMap &grid)
{
    return map_from_xy(grid, [&](double t, double p) { return ff_closed_form(ring, t, p); });
}

} // namespace vtwin::test
