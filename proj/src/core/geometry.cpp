#include "vtwin/geometry.hpp"

#include "vtwin/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace vtwin
{
namespace
{
const double sqrt3 = std::sqrt(3.0);

// Six unit directions of the triangular lattice, counter-clockwise from +x.
Vec2 lattice_direction(int k, double a)
{
    const double ang = pi / 3.0 * static_cast<double>(k % 6);
    return {a * std::cos(ang), a * std::sin(ang)};
}

void check_layer_id(int layer_id)
{
    if (layer_id != 1 && layer_id != 2)
    {
        fail(ErrorCode::InvalidArgument, "unknown grating layer " + std::to_string(layer_id));
    }
}
} // namespace

double DeviceGeometry::lattice_constant(int layer_id) const
{
    check_layer_id(layer_id);
    return layer_id == 1 ? a1 : a2;
}

double DeviceGeometry::height(int layer_id) const
{
    check_layer_id(layer_id);
    return layer_id == 1 ? z1.value_or(d1 / 2.0) : z2;
}

cplx DeviceGeometry::alpha(int layer_id) const
{
    check_layer_id(layer_id);
    return layer_id == 1 ? alpha1 : alpha2;
}

void validate(const DeviceGeometry &g)
{
    const auto positive = [](double x, const char *name) {
        if (!(x > 0.0) || !std::isfinite(x))
        {
            fail(ErrorCode::InvalidArgument, std::string("geometry: ") + name + " must be positive");
        }
    };
    positive(g.r_d, "r_d");
    positive(g.h, "h");
    positive(g.a1, "a1");
    positive(g.a2, "a2");
    positive(g.d1, "d1");
    positive(g.d2, "d2");
    positive(g.r_h1, "r_h1");
    positive(g.r_h2, "r_h2");
    positive(g.z2, "z2");
    positive(g.n_diamond, "n_diamond");
    positive(g.n_ox, "n_ox");
    positive(g.n_sio2, "n_sio2");
    positive(g.lambda0, "lambda0");
    require(g.r_h1 < g.a1 / 2.0, "geometry: r_h1 must be below a1/2 (holes overlap)");
    require(g.r_h2 < g.a2 / 2.0, "geometry: r_h2 must be below a2/2 (holes overlap)");
    const double z1 = g.height(1);
    require(std::isfinite(z1) && z1 >= 0.0, "geometry: z1 must be non-negative");
    require(g.z2 > z1, "geometry: layer 2 must sit above layer 1 (z2 > z1)");
}

AlignmentOffset configuration_a(int layer)
{
    check_layer_id(layer);
    return {0.0, 0.0, layer};
}

AlignmentOffset configuration_b(const DeviceGeometry &geom, int layer)
{
    return {geom.lattice_constant(layer) / 2.0, 0.0, layer};
}

std::vector<Vec2> hex_trace(int l, double a)
{
    if (l < 0)
    {
        fail(ErrorCode::InvalidArgument, "hex_trace: negative trace index");
    }
    if (!(a > 0.0))
    {
        fail(ErrorCode::InvalidArgument, "hex_trace: lattice constant must be positive");
    }
    if (l == 0)
    {
        return {Vec2{}};
    }
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(6 * l));
    const double scale = static_cast<double>(l);
    for (int side = 0; side < 6; ++side)
    {
        const Vec2 corner = scale * lattice_direction(side, 1.0);
        const Vec2 step = lattice_direction(side + 2, 1.0);
        for (int j = 0; j < l; ++j)
        {
            const Vec2 unit = corner + static_cast<double>(j) * step;
            pts.push_back(a * unit);
        }
    }
    return pts;
}

ScattererLayer build_layer(const DeviceGeometry &geom, int layer_id, const AlignmentOffset &offset,
                           double max_radius)
{
    check_layer_id(layer_id);
    if (!(max_radius > 0.0))
    {
        fail(ErrorCode::InvalidArgument, "build_layer: max_radius must be positive");
    }
    const double a = geom.lattice_constant(layer_id);
    const double z = geom.height(layer_id);
    const Vec2 shift = offset.layer == layer_id ? Vec2{offset.u, offset.v} : Vec2{};
    const double limit = max_radius * (1.0 + 1e-12);

    ScattererLayer layer;
    layer.alpha = geom.alpha(layer_id);
    layer.layer_id = layer_id;
    for (int l = 0;; ++l)
    {
        // Innermost point of trace l sits at the hexagon apothem l*a*sqrt(3)/2.
        if (static_cast<double>(l) * a * sqrt3 / 2.0 - shift.norm() > limit)
        {
            break;
        }
        for (const Vec2 &p : hex_trace(l, a))
        {
            const Vec2 q = p + shift;
            if (q.norm() <= limit)
            {
                layer.positions.push_back({q.x, q.y, z});
                layer.trace_index.push_back(l);
            }
        }
    }
    return layer;
}

std::array<Vec2, 3> reduced_domain_vertices(double a)
{
    return {Vec2{0.0, 0.0}, Vec2{a / 2.0, 0.0}, Vec2{a / 2.0, a / (2.0 * sqrt3)}};
}

bool in_reduced_domain(Vec2 p, double a)
{
    return p.y >= 0.0 && p.x <= a / 2.0 && p.y <= p.x / sqrt3;
}

Vec2 fold_to_reduced_domain(Vec2 p, double a)
{
    if (!(a > 0.0))
    {
        fail(ErrorCode::InvalidArgument, "fold_to_reduced_domain: lattice constant must be positive");
    }
    if (in_reduced_domain(p, a))
    {
        return p;
    }

    // Nearest lattice site (Voronoi cell of the triangular lattice).
    const double j0 = std::floor(p.y / (a * sqrt3 / 2.0));
    const double i0 = std::floor((p.x - j0 * a / 2.0) / a);
    Vec2 best{};
    double best_d2 = std::numeric_limits<double>::infinity();
    for (int dj = -1; dj <= 2; ++dj)
    {
        for (int di = -1; di <= 2; ++di)
        {
            const double i = i0 + di;
            const double j = j0 + dj;
            const Vec2 site{a * (i + j / 2.0), a * j * sqrt3 / 2.0};
            const Vec2 d = p - site;
            const double d2 = d.x * d.x + d.y * d.y;
            if (d2 < best_d2)
            {
                best_d2 = d2;
                best = d;
            }
        }
    }

    // Point group D6: fold the polar angle into [0, pi/6].
    const double r = best.norm();
    double ang = std::atan2(best.y, best.x);
    if (ang < 0.0)
    {
        ang += two_pi;
    }
    ang = std::fmod(ang, pi / 3.0);
    if (ang > pi / 6.0)
    {
        ang = pi / 3.0 - ang;
    }
    Vec2 q{r * std::cos(ang), r * std::sin(ang)};
    q.y = std::max(q.y, 0.0);
    q.x = std::min(q.x, a / 2.0);
    q.y = std::min(q.y, q.x / sqrt3);
    return q;
}

std::vector<Vec2> reduced_domain_grid(int n, double a)
{
    require(n >= 1, "reduced_domain_grid: need at least one point per edge");
    require(a > 0.0, "reduced_domain_grid: lattice constant must be positive");
    const auto [va, vb, vc] = reduced_domain_vertices(a);
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
    const double denom = n > 1 ? static_cast<double>(n - 1) : 1.0;
    for (int i = 0; i < n; ++i)
    {
        for (int j = 0; j <= i; ++j)
        {
            const double s = i / denom;
            const double t = j / denom;
            out.push_back(va + s * (vb - va) + t * (vc - vb));
        }
    }
    return out;
}

ScattererLayer select_interacting(const ScattererLayer &layer, double inner, double outer)
{
    require(inner >= 0.0 && inner < outer, "select_interacting: need 0 <= inner < outer");
    ScattererLayer out;
    out.alpha = layer.alpha;
    out.layer_id = layer.layer_id;
    for (std::size_t i = 0; i < layer.size(); ++i)
    {
        const double r = layer.positions[i].rho();
        if (r >= inner && r <= outer)
        {
            out.positions.push_back(layer.positions[i]);
            out.trace_index.push_back(layer.trace_index[i]);
        }
    }
    return out;
}

} // namespace vtwin
