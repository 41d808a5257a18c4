#pragma once

#include "vtwin/vec.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace vtwin
{

/// Sampled near field on a rectangular (x, y) grid at a single z plane.
/// Values are stored row-major with x varying fastest.
struct NearFieldGrid
{
    int nx = 0;
    int ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    double x0 = 0.0;
    double y0 = 0.0;
    double z = 0.0;
    double lambda0 = 1.0;
    std::vector<CVec3> values;

    const CVec3 &at(int ix, int iy) const { return values[static_cast<std::size_t>(iy * nx + ix)]; }
    double x(int ix) const { return x0 + ix * dx; }
    double y(int iy) const { return y0 + iy * dy; }
};

enum class NearFieldVariant
{
    Analytic,
    Imported,
};

/// Cavity near field just below the first grating. The analytic variant is a
/// Gaussian annulus exp(-(rho - rho_m)^2 / w^2) carrying the WGM winding
/// exp(i M phi) on its rho and z components.
struct NearFieldSpec
{
    NearFieldVariant variant = NearFieldVariant::Analytic;
    int M = 17;
    double rho_m = 1.4687 - 0.2;
    double w = 0.25;
    cplx amp_rho{1.0, 0.0};
    cplx amp_z{0.0, 0.0};
    std::shared_ptr<const NearFieldGrid> grid;
};

void validate(const NearFieldSpec &spec);

/// Cylindrical components (E_rho, E_phi, E_z) of the analytic field.
CVec3 sample_analytic_cylindrical(const NearFieldSpec &spec, double rho, double phi);

/// Cartesian field at a point. Imported grids are interpolated bilinearly in
/// (x, y); the z coordinate is ignored (the grid is a single plane).
CVec3 sample_nearfield(const NearFieldSpec &spec, Vec3 point);

NearFieldSpec import_nearfield(const std::string &path);
NearFieldSpec import_nearfield(std::istream &in, const std::string &source = "<stream>");
void export_nearfield(const NearFieldGrid &grid, const std::string &path);
void export_nearfield(const NearFieldGrid &grid, std::ostream &out);

/// Samples an analytic spec onto a grid (test fixtures, FDTD stand-in files).
NearFieldGrid rasterize(const NearFieldSpec &analytic, double x0, double y0, int nx, int ny, double dx,
                        double dy, double z);

struct EmitterSpec
{
    std::string name;
    double branch = 0.25; // Gamma_tot,0 / Gamma_ZPL,0 - 1
    double Fp = 0.0;
};

struct CavityMode
{
    double Q = 1e4;
    double V = 3.0; // in (lambda / n_eff)^3
    double n_eff = 1.0;
};

/// Color-center presets by name (SnV, SiV, NV); unknown names throw.
EmitterSpec emitter_preset(const std::string &name);

double purcell_factor(const CavityMode &mode);
double zpl_efficiency(double Fp, double branch);
double zpl_efficiency(const EmitterSpec &emitter);
double required_purcell(double eta_target, double branch);

} // namespace vtwin
