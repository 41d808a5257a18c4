#include "vtwin/nearfield.hpp"

#include "vtwin/error.hpp"
#include "vtwin/numfmt.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace vtwin
{
namespace
{
const char *const grid_header = "nx,ny,dx,dy,z,lambda0";
const char *const grid_columns = "x,y,ex_re,ex_im,ey_re,ey_im,ez_re,ez_im";

[[noreturn]] void parse_fail(const std::string &source, int line, int column, const std::string &what)
{
    std::ostringstream msg;
    msg << source << ":" << line;
    if (column > 0)
    {
        msg << ":" << column;
    }
    msg << ": " << what;
    fail(ErrorCode::Parse, msg.str());
}

// Fractional grid coordinate -> (cell index, weight); snaps to nodes so that
// node queries return stored values exactly.
bool locate(double f, int n, int &i, double &t)
{
    const double eps = 1e-9;
    if (f < -eps || f > (n - 1) + eps)
    {
        return false;
    }
    const double nearest = std::round(f);
    if (std::abs(f - nearest) < eps)
    {
        f = nearest;
    }
    if (n == 1)
    {
        i = 0;
        t = 0.0;
        return true;
    }
    i = std::min(static_cast<int>(std::floor(f)), n - 2);
    i = std::max(i, 0);
    t = f - i;
    return true;
}
} // namespace

void validate(const NearFieldSpec &spec)
{
    if (spec.variant == NearFieldVariant::Imported)
    {
        require(spec.grid != nullptr && !spec.grid->values.empty(), "near field: imported variant has no grid");
        return;
    }
    require(spec.M >= 1, "near field: mode number M must be >= 1");
    require(spec.w > 0.0, "near field: annulus width w must be positive");
    require(spec.rho_m >= 0.0, "near field: annulus radius rho_m must be non-negative");
    require(spec.amp_rho != cplx{} || spec.amp_z != cplx{}, "near field: amp_rho and amp_z are both zero");
}

CVec3 sample_analytic_cylindrical(const NearFieldSpec &spec, double rho, double phi)
{
    const double dr = (rho - spec.rho_m) / spec.w;
    const cplx winding = std::exp(cplx{0.0, static_cast<double>(spec.M) * phi});
    const cplx profile = std::exp(-dr * dr) * winding;
    return {spec.amp_rho * profile, cplx{}, spec.amp_z * profile};
}

CVec3 sample_nearfield(const NearFieldSpec &spec, Vec3 point)
{
    if (spec.variant == NearFieldVariant::Analytic)
    {
        const double phi = point.phi();
        const CVec3 cyl = sample_analytic_cylindrical(spec, point.rho(), phi);
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        return {cyl.x * c - cyl.y * s, cyl.x * s + cyl.y * c, cyl.z};
    }

    const NearFieldGrid &g = *spec.grid;
    int ix = 0;
    int iy = 0;
    double tx = 0.0;
    double ty = 0.0;
    if (!locate((point.x - g.x0) / g.dx, g.nx, ix, tx) || !locate((point.y - g.y0) / g.dy, g.ny, iy, ty))
    {
        std::ostringstream msg;
        msg << "near field: point (" << point.x << ", " << point.y << ") outside imported grid";
        fail(ErrorCode::OutOfRange, msg.str());
    }
    const int ix1 = g.nx > 1 ? ix + 1 : ix;
    const int iy1 = g.ny > 1 ? iy + 1 : iy;
    const auto lerp = [](const CVec3 &a, const CVec3 &b, double t) {
        if (t == 0.0)
        {
            return a;
        }
        return (1.0 - t) * a + cplx{t} * b;
    };
    const CVec3 lo = lerp(g.at(ix, iy), g.at(ix1, iy), tx);
    const CVec3 hi = lerp(g.at(ix, iy1), g.at(ix1, iy1), tx);
    return lerp(lo, hi, ty);
}

NearFieldSpec import_nearfield(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
    {
        fail(ErrorCode::Io, "cannot open near-field file " + path);
    }
    return import_nearfield(in, path);
}

NearFieldSpec import_nearfield(std::istream &in, const std::string &source)
{
    std::string line;
    int lineno = 0;
    const auto next_line = [&]() -> bool {
        while (std::getline(in, line))
        {
            ++lineno;
            const std::string t = trim(line);
            if (t.empty() || t[0] == '#')
            {
                continue;
            }
            line = t;
            return true;
        }
        return false;
    };
    const auto numbers = [&](std::size_t expected) {
        const auto fields = split(line, ',');
        if (fields.size() != expected)
        {
            parse_fail(source, lineno, 0,
                       "expected " + std::to_string(expected) + " fields, got " + std::to_string(fields.size()));
        }
        std::vector<double> out;
        for (std::size_t c = 0; c < fields.size(); ++c)
        {
            double v = 0.0;
            if (!parse_double(fields[c], v))
            {
                parse_fail(source, lineno, static_cast<int>(c + 1), "not a number: '" + fields[c] + "'");
            }
            if (!std::isfinite(v))
            {
                parse_fail(source, lineno, static_cast<int>(c + 1), "non-finite value");
            }
            out.push_back(v);
        }
        return out;
    };

    if (!next_line() || line != grid_header)
    {
        parse_fail(source, lineno, 0, std::string("malformed header, expected '") + grid_header + "'");
    }
    if (!next_line())
    {
        parse_fail(source, lineno, 0, "missing grid metadata row");
    }
    const auto meta = numbers(6);
    auto grid = std::make_shared<NearFieldGrid>();
    grid->nx = static_cast<int>(meta[0]);
    grid->ny = static_cast<int>(meta[1]);
    grid->dx = meta[2];
    grid->dy = meta[3];
    grid->z = meta[4];
    grid->lambda0 = meta[5];
    if (grid->nx < 1 || grid->ny < 1 || meta[0] != grid->nx || meta[1] != grid->ny)
    {
        parse_fail(source, lineno, 1, "nx and ny must be positive integers");
    }
    if (!(grid->dx > 0.0) || !(grid->dy > 0.0) || !(grid->lambda0 > 0.0))
    {
        parse_fail(source, lineno, 3, "dx, dy and lambda0 must be positive");
    }
    if (!next_line() || line != grid_columns)
    {
        parse_fail(source, lineno, 0, std::string("malformed column header, expected '") + grid_columns + "'");
    }

    const std::size_t count = static_cast<std::size_t>(grid->nx) * static_cast<std::size_t>(grid->ny);
    grid->values.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
    {
        if (!next_line())
        {
            parse_fail(source, lineno, 0,
                       "grid truncated: expected " + std::to_string(count) + " rows, got " + std::to_string(k));
        }
        const auto row = numbers(8);
        const int ix = static_cast<int>(k % static_cast<std::size_t>(grid->nx));
        const int iy = static_cast<int>(k / static_cast<std::size_t>(grid->nx));
        if (k == 0)
        {
            grid->x0 = row[0];
            grid->y0 = row[1];
        }
        const double tol = 1e-6;
        if (std::abs(row[0] - grid->x(ix)) > tol * grid->dx)
        {
            parse_fail(source, lineno, 1, "non-rectangular grid: x does not match x0 + ix*dx");
        }
        if (std::abs(row[1] - grid->y(iy)) > tol * grid->dy)
        {
            parse_fail(source, lineno, 2, "non-rectangular grid: y does not match y0 + iy*dy");
        }
        grid->values.push_back({{row[2], row[3]}, {row[4], row[5]}, {row[6], row[7]}});
    }
    if (next_line())
    {
        parse_fail(source, lineno, 0, "unexpected rows after " + std::to_string(count) + " grid nodes");
    }

    NearFieldSpec spec;
    spec.variant = NearFieldVariant::Imported;
    spec.grid = std::move(grid);
    return spec;
}

void export_nearfield(const NearFieldGrid &grid, std::ostream &out)
{
    out << "# vtwin near-field grid\n";
    out << grid_header << '\n';
    out << grid.nx << ',' << grid.ny << ',' << fmt_num(grid.dx) << ',' << fmt_num(grid.dy) << ','
        << fmt_num(grid.z) << ',' << fmt_num(grid.lambda0) << '\n';
    out << grid_columns << '\n';
    for (int iy = 0; iy < grid.ny; ++iy)
    {
        for (int ix = 0; ix < grid.nx; ++ix)
        {
            const CVec3 &e = grid.at(ix, iy);
            out << fmt_exact(grid.x(ix)) << ',' << fmt_exact(grid.y(iy)) << ',' << fmt_exact(e.x.real()) << ','
                << fmt_exact(e.x.imag()) << ',' << fmt_exact(e.y.real()) << ',' << fmt_exact(e.y.imag()) << ','
                << fmt_exact(e.z.real()) << ',' << fmt_exact(e.z.imag()) << '\n';
        }
    }
}

void export_nearfield(const NearFieldGrid &grid, const std::string &path)
{
    std::ofstream out(path);
    if (!out)
    {
        fail(ErrorCode::Io, "cannot write near-field file " + path);
    }
    export_nearfield(grid, out);
}

NearFieldGrid rasterize(const NearFieldSpec &analytic, double x0, double y0, int nx, int ny, double dx,
                        double dy, double z)
{
    require(analytic.variant == NearFieldVariant::Analytic, "rasterize: spec must be analytic");
    require(nx >= 1 && ny >= 1 && dx > 0.0 && dy > 0.0, "rasterize: invalid grid shape");
    NearFieldGrid g;
    g.nx = nx;
    g.ny = ny;
    g.dx = dx;
    g.dy = dy;
    g.x0 = x0;
    g.y0 = y0;
    g.z = z;
    g.values.reserve(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
    for (int iy = 0; iy < ny; ++iy)
    {
        for (int ix = 0; ix < nx; ++ix)
        {
            g.values.push_back(sample_nearfield(analytic, {g.x(ix), g.y(iy), z}));
        }
    }
    return g;
}

EmitterSpec emitter_preset(const std::string &name)
{
    if (name == "SnV")
    {
        return {"SnV", 0.25, 0.0};
    }
    if (name == "SiV")
    {
        return {"SiV", 0.66, 0.0};
    }
    if (name == "NV")
    {
        return {"NV", 32.3, 0.0};
    }
    fail(ErrorCode::InvalidArgument, "unknown emitter preset '" + name + "' (expected SnV, SiV or NV)");
}

double purcell_factor(const CavityMode &mode)
{
    require(mode.Q > 0.0, "purcell_factor: Q must be positive");
    require(mode.V > 0.0, "purcell_factor: V must be positive");
    require(mode.n_eff >= 1.0, "purcell_factor: n_eff must be >= 1");
    return 3.0 / (4.0 * pi * pi) * mode.Q / mode.V;
}

double zpl_efficiency(double Fp, double branch)
{
    require(Fp >= 0.0, "zpl_efficiency: Purcell factor must be non-negative");
    require(branch >= 0.0, "zpl_efficiency: branching term must be non-negative");
    if (std::isinf(Fp))
    {
        return 1.0;
    }
    if (Fp == 0.0)
    {
        return 0.0;
    }
    return Fp / (Fp + branch);
}

double zpl_efficiency(const EmitterSpec &emitter)
{
    return zpl_efficiency(emitter.Fp, emitter.branch);
}

double required_purcell(double eta_target, double branch)
{
    require(eta_target > 0.0 && eta_target < 1.0, "required_purcell: target efficiency must lie in (0, 1)");
    require(branch >= 0.0, "required_purcell: branching term must be non-negative");
    return branch * eta_target / (1.0 - eta_target);
}

} // namespace vtwin
