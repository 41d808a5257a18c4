#pragma once

#include "vtwin/vec.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace vtwin
{

enum class RingOrientation
{
    Rho, // ring driven by the E_rho near-field component
    Z,   // ring driven by the E_z near-field component
};

/// A layer-1 ring of N dipoles of charge L = M - N, plus the layer-2 circle
/// it illuminates. Defaults follow the optimized design: the n = 3 trace of
/// layer 1 and the n = 9 trace of layer 2 at the default layer spacing.
struct RingSpec
{
    int N = 18;
    double rho_n = 3 * 0.5234;
    int L = 1;
    RingOrientation orientation = RingOrientation::Rho;
    int Q_ring = 54;
    double r_q = std::hypot(9 * 0.3406, 2.0 - 0.3561 / 2.0);
    double theta_q = std::atan2(9 * 0.3406, 2.0 - 0.3561 / 2.0);
    double z_if = 2.0 - 0.3561 / 2.0; // height of the intermediate observation plane
    double r_ff = 1e4;          // far-field observation radius
    cplx alpha1{1.0, 0.0};
    cplx alpha2{1.0, 0.0};
    cplx e_nf{1.0, 0.0}; // near-field amplitude on the ring
};

void validate(const RingSpec &ring);

struct PrefactorState
{
    cplx f_val{}; // f(rho, z) on the intermediate plane
    cplx g_val{}; // g(r, theta) on the far-field sphere
};

/// f(rho, z) = -i k alpha1 E_nf exp(i k z (1 + rho^2 / 2 z^2)) / z^2
cplx prefactor_f(const RingSpec &ring, double rho, double z);

/// Prefactors at polar angle theta: f on the plane z = z_if, g at radius r_ff.
PrefactorState prefactors(const RingSpec &ring, double theta);

struct CylindricalField
{
    cplx e_rho{};
    cplx e_phi{};
    cplx e_z{};
};

/// Closed-form intermediate field (Fresnel regime, argument k rho_n tan(theta)).
/// Z orientation swaps the (2, 3) coefficients to (3, 2).
CylindricalField if_components(const RingSpec &ring, double theta, double phi);

/// Transverse intermediate field (E_x, E_y): an LHCP vortex of charge L-1 plus
/// an RHCP vortex of charge L+1.
std::array<cplx, 2> if_transverse(const RingSpec &ring, double theta, double phi);

/// Closed-form far field (E_x, E_y) behind the second layer (Fraunhofer regime).
std::array<cplx, 2> ff_closed_form(const RingSpec &ring, double theta, double phi);

/// True when one circular channel carries charge zero (L = +-1), i.e. the
/// far field has on-axis intensity.
bool onaxis_selection(int L);

struct Fig2Row
{
    int charge = 0; // OAM charge of the LHCP channel (ring L = charge + 1)
    double na = 0.0;
    double intensity_if = 0.0; // normalized to max 1 per charge
    double intensity_ff = 0.0;
};

/// Normalized intermediate/far-field cross sections at phi = 0 versus NA.
/// Each charge c is the beam charge of the LHCP channel, so the ring is
/// evaluated with L = c + 1.
std::vector<Fig2Row> fig2_profiles(const std::vector<int> &charges, const RingSpec &ring,
                                   const std::vector<double> &na_samples);

/// Evenly spaced NA samples on [0, na_max].
std::vector<double> na_samples(int count, double na_max = 0.95);

/// Fraction of sin(theta)-weighted energy inside na_cut for one charge of a
/// fig2_profiles table (trapezoid on the NA samples mapped to theta).
double encircled_fraction(const std::vector<Fig2Row> &rows, int charge, double na_cut, bool far_field);

} // namespace vtwin
