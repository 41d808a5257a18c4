#pragma once

#include "vtwin/vec.hpp"

#include <array>
#include <optional>
#include <vector>

namespace vtwin
{

/// Device dimensions in units of the design wavelength. Defaults are the
/// optimized dual-grating design; z1/z2 are placeholders (not published).
struct DeviceGeometry
{
    double r_d = 1.4687;
    double h = 0.9491;
    double a1 = 0.5234;
    double a2 = 0.3406;
    double d1 = 0.3561;
    double d2 = 0.3561;
    double r_h1 = 0.1875;
    double r_h2 = 0.1562;
    std::optional<double> z1; // unset: d1/2, layer 1 directly on the disk
    double z2 = 2.0;          // intermediate-field region
    double n_diamond = 2.4;
    double n_ox = 1.8;
    double n_sio2 = 1.4;
    double lambda0 = 1.0;
    cplx alpha1{1.0, 0.0};
    cplx alpha2{1.0, 0.0};

    double lattice_constant(int layer_id) const;
    double height(int layer_id) const;
    cplx alpha(int layer_id) const;
};

/// Throws InvalidArgument when a geometry invariant is violated.
void validate(const DeviceGeometry &geom);

struct AlignmentOffset
{
    double u = 0.0;
    double v = 0.0;
    int layer = 1; // grating layer that is translated
};

/// Named alignment presets: A is full alignment, B shifts by half a lattice constant.
AlignmentOffset configuration_a(int layer = 1);
AlignmentOffset configuration_b(const DeviceGeometry &geom, int layer = 1);

struct ScattererLayer
{
    std::vector<Vec3> positions;
    std::vector<int> trace_index;
    cplx alpha{};
    int layer_id = 1;

    std::size_t size() const { return positions.size(); }
    bool empty() const { return positions.empty(); }
};

/// Perimeter sites of the l-th hexagon around the origin of a triangular
/// lattice with constant a, walked in order (6l points, or the origin for l = 0).
std::vector<Vec2> hex_trace(int l, double a);

/// Lattice sites within max_radius of the optical axis. The offset is applied
/// only when offset.layer == layer_id.
ScattererLayer build_layer(const DeviceGeometry &geom, int layer_id, const AlignmentOffset &offset,
                           double max_radius);

/// Closed fundamental triangle of the p6m group of the lattice:
/// (0,0), (a/2,0), (a/2, a/(2*sqrt 3)).
std::array<Vec2, 3> reduced_domain_vertices(double a);
bool in_reduced_domain(Vec2 p, double a);

/// Maps an in-plane offset onto its symmetry-equivalent inside the reduced
/// triangle. Offsets already inside are returned unchanged.
Vec2 fold_to_reduced_domain(Vec2 p, double a);

/// Barycentric sampling with n points per triangle edge (n(n+1)/2 offsets).
std::vector<Vec2> reduced_domain_grid(int n, double a);

/// Scatterers with radial distance in [inner, outer].
ScattererLayer select_interacting(const ScattererLayer &layer, double inner, double outer);

} // namespace vtwin
