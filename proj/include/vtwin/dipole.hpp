#pragma once

#include "vtwin/geometry.hpp"
#include "vtwin/nearfield.hpp"
#include "vtwin/vec.hpp"

#include <functional>
#include <span>
#include <vector>

namespace vtwin
{

/// Observation points closer than this to a dipole are rejected.
inline constexpr double singularity_guard = 1e-6;

struct DipoleSet
{
    std::vector<Vec3> positions;
    std::vector<CVec3> moments;
    double k = k0;

    std::size_t size() const { return positions.size(); }
};

/// Union of two sets radiating at the same wavenumber.
DipoleSet merge(const DipoleSet &a, const DipoleSet &b);

struct FieldGrid
{
    std::vector<Vec3> points;
    std::vector<CVec3> values;
};

/// Hemisphere sampling: theta in [0, pi/2] (both ends included), phi uniform
/// and periodic on [0, 2 pi). Intensities are stored theta-major.
struct FarFieldMap
{
    std::vector<double> theta;
    std::vector<double> phi;
    std::vector<cplx> e_theta;
    std::vector<cplx> e_phi;
    std::vector<double> intensity;

    std::size_t n_theta() const { return theta.size(); }
    std::size_t n_phi() const { return phi.size(); }
    std::size_t index(std::size_t it, std::size_t ip) const { return it * phi.size() + ip; }
};

/// Hemisphere grid whose theta nodes include 0, pi/2 and asin(na_node).
/// With an even number of theta intervals both segments get an even count,
/// so every-other-node subsampling keeps the NA node.
FarFieldMap make_hemisphere(int n_theta, int n_phi, double na_node = 0.7);

/// Full near/intermediate/far-zone field of one oscillating dipole
/// (1/(4 pi eps0) folded into the units).
CVec3 dipole_field_at(const CVec3 &p, Vec3 src, Vec3 obs, double k = k0);

using FieldSampler = std::function<CVec3(Vec3)>;

/// p_n = alpha * E_incident(r_n).
DipoleSet induce_moments(const ScattererLayer &layer, const FieldSampler &incident, double k = k0);

/// Sum of all dipole fields at each observation point. Parallel over points;
/// each point sums dipoles in index order, so results do not depend on the
/// worker count.
FieldGrid superpose_field(const DipoleSet &dipoles, std::span<const Vec3> obs);

struct FarFieldOptions
{
    double r_ff = 1e4;        // observation radius in wavelengths
    bool asymptotic = false;  // direction-only radiation term
};

/// Radiated field on the hemisphere with exp(ikR)/R divided out, projected on
/// (theta, phi). The returned map is not normalized.
FarFieldMap radiate(const DipoleSet &dipoles, const FarFieldMap &grid, const FarFieldOptions &opts = {});

/// Scales the map so max intensity is 1 (all-zero maps are left untouched).
void normalize(FarFieldMap &map);

struct CascadeOptions
{
    FarFieldOptions far;
    bool layer2_only = false; // drop the direct layer-1 radiation
};

struct CascadeResult
{
    DipoleSet layer1;
    DipoleSet layer2;
    FarFieldMap map; // normalized
};

/// Near field -> layer-1 dipoles -> intermediate field at layer-2 sites ->
/// layer-2 dipoles -> far field (single scattering, no back-action).
CascadeResult cascade_two_layers(const NearFieldSpec &nearfield, const ScattererLayer &layer1,
                                 const ScattererLayer &layer2, const FarFieldMap &grid,
                                 const CascadeOptions &opts = {});

/// Sets the number of worker threads used by field evaluation (0 = hardware).
void set_worker_threads(unsigned n);
unsigned worker_threads();

} // namespace vtwin
