#include "vtwin/metrics.hpp"

#include "vtwin/error.hpp"
#include "vtwin/numfmt.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

namespace vtwin
{
namespace
{
// Azimuthal mean of intensity times sin(theta), per theta node.
std::vector<double> ring_power(const FarFieldMap &map)
{
    std::vector<double> p(map.n_theta(), 0.0);
    const std::size_t np = map.n_phi();
    for (std::size_t it = 0; it < map.n_theta(); ++it)
    {
        double s = 0.0;
        for (std::size_t ip = 0; ip < np; ++ip)
        {
            s += map.intensity[map.index(it, ip)];
        }
        p[it] = s / static_cast<double>(np) * std::sin(map.theta[it]);
    }
    return p;
}

// Trapezoid weights for the (possibly non-uniform) theta nodes.
std::vector<double> theta_weights(const std::vector<double> &theta)
{
    std::vector<double> w(theta.size(), 0.0);
    for (std::size_t i = 0; i + 1 < theta.size(); ++i)
    {
        const double h = theta[i + 1] - theta[i];
        w[i] += h / 2.0;
        w[i + 1] += h / 2.0;
    }
    return w;
}

void check_map(const FarFieldMap &map)
{
    require(map.n_theta() >= 2 && map.n_phi() >= 1, "far-field map has too few nodes");
    require(map.intensity.size() == map.n_theta() * map.n_phi(), "far-field map size mismatch");
}

cplx cis(double a)
{
    return {std::cos(a), std::sin(a)};
}

// Per-theta-row data for the overlap functional with polarization s.
struct OverlapRows
{
    std::vector<double> weight; // trapezoid * sin(theta) * dphi
    std::vector<cplx> projection;
    double field_norm = 0.0;
};

OverlapRows overlap_rows(const FarFieldMap &map, int s)
{
    OverlapRows rows;
    const auto w = theta_weights(map.theta);
    const std::size_t np = map.n_phi();
    const double dphi = two_pi / static_cast<double>(np);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    rows.weight.resize(map.n_theta());
    rows.projection.resize(map.n_theta());
    for (std::size_t it = 0; it < map.n_theta(); ++it)
    {
        rows.weight[it] = w[it] * std::sin(map.theta[it]) * dphi;
        cplx acc{};
        for (std::size_t ip = 0; ip < np; ++ip)
        {
            const std::size_t i = map.index(it, ip);
            const cplx base = cis(s * map.phi[ip]) * inv_sqrt2;
            const cplx g_theta = base;
            const cplx g_phi = cplx{0.0, static_cast<double>(s)} * base;
            acc += std::conj(map.e_theta[i]) * g_theta + std::conj(map.e_phi[i]) * g_phi;
            rows.field_norm += rows.weight[it] * map.intensity[i];
        }
        rows.projection[it] = acc;
    }
    return rows;
}

double overlap_value(const OverlapRows &rows, const FarFieldMap &map, double waist)
{
    cplx inner{};
    double g_norm = 0.0;
    const double np = static_cast<double>(map.n_phi());
    for (std::size_t it = 0; it < rows.weight.size(); ++it)
    {
        const double t = map.theta[it] / waist;
        const double g = std::exp(-t * t);
        inner += rows.weight[it] * g * rows.projection[it];
        g_norm += rows.weight[it] * g * g * np;
    }
    if (!(g_norm > 0.0) || !(rows.field_norm > 0.0))
    {
        return 0.0;
    }
    return std::norm(inner) / (rows.field_norm * g_norm);
}

GaussianOverlap maximize_waist(const FarFieldMap &map, int s)
{
    const OverlapRows rows = overlap_rows(map, s);
    const double lo = 0.01;
    const double hi = 1.2;
    const auto f = [&](double w) { return overlap_value(rows, map, w); };

    // Coarse scan brackets the best basin, golden section refines it.
    const int scan = 120;
    int best = 0;
    double best_val = -1.0;
    for (int i = 0; i <= scan; ++i)
    {
        const double v = f(lo + (hi - lo) * i / scan);
        if (v > best_val)
        {
            best_val = v;
            best = i;
        }
    }
    double a = lo + (hi - lo) * std::max(best - 1, 0) / scan;
    double b = lo + (hi - lo) * std::min(best + 1, scan) / scan;
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - ratio * (b - a);
    double d = a + ratio * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > 1e-5)
    {
        if (fc > fd)
        {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        }
        else
        {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    const double w = 0.5 * (a + b);
    return {f(w), w, s};
}
} // namespace

double collection_efficiency(const FarFieldMap &map, double na, double eta_ex)
{
    check_map(map);
    require(na >= 0.0 && na <= 1.0, "collection_efficiency: NA must lie in [0, 1]");
    require(eta_ex >= 0.0 && eta_ex <= 1.0, "collection_efficiency: eta_ex must lie in [0, 1]");
    const auto p = ring_power(map);
    const double cut = std::asin(na);
    double inside = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
    {
        const double t0 = map.theta[i];
        const double t1 = map.theta[i + 1];
        const double seg = 0.5 * (t1 - t0) * (p[i] + p[i + 1]);
        total += seg;
        if (t1 <= cut)
        {
            inside += seg;
        }
        else if (t0 < cut)
        {
            const double frac = (cut - t0) / (t1 - t0);
            const double p_cut = p[i] + frac * (p[i + 1] - p[i]);
            inside += 0.5 * (cut - t0) * (p[i] + p_cut);
        }
    }
    if (!(total > 0.0))
    {
        fail(ErrorCode::UndefinedRatio, "collection efficiency undefined: far-field map carries no power");
    }
    return eta_ex * std::min(inside / total, 1.0);
}

EfficiencyCurve efficiency_curve(const FarFieldMap &map, double eta_ex, const std::vector<double> &na_grid)
{
    require(std::is_sorted(na_grid.begin(), na_grid.end()), "efficiency_curve: NA grid must be ascending");
    EfficiencyCurve curve;
    curve.reserve(na_grid.size());
    for (double na : na_grid)
    {
        curve.emplace_back(na, collection_efficiency(map, na, eta_ex));
    }
    return curve;
}

std::vector<double> uniform_na_grid(int n)
{
    require(n >= 2, "uniform_na_grid: need at least two points");
    std::vector<double> g(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
    {
        g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
    }
    return g;
}

double gaussian_overlap_at(const FarFieldMap &map, double waist, int handedness)
{
    check_map(map);
    require(waist > 0.0, "gaussian_overlap_at: waist must be positive");
    require(handedness == 1 || handedness == -1, "gaussian_overlap_at: handedness must be +1 or -1");
    return overlap_value(overlap_rows(map, handedness), map, waist);
}

GaussianOverlap gaussian_overlap(const FarFieldMap &map)
{
    check_map(map);
    double total = 0.0;
    for (double v : map.intensity)
    {
        total += v;
    }
    if (!(total > 0.0))
    {
        fail(ErrorCode::UndefinedRatio, "Gaussian overlap undefined: far-field map carries no power");
    }

    // Dominant circular polarization on axis (theta = 0 row, Cartesian frame).
    double lhcp = 0.0;
    double rhcp = 0.0;
    for (std::size_t ip = 0; ip < map.n_phi(); ++ip)
    {
        const std::size_t i = map.index(0, ip);
        const double c = std::cos(map.phi[ip]);
        const double s = std::sin(map.phi[ip]);
        const cplx ex = map.e_theta[i] * c - map.e_phi[i] * s;
        const cplx ey = map.e_theta[i] * s + map.e_phi[i] * c;
        lhcp += std::norm(ex - cplx{0.0, 1.0} * ey);
        rhcp += std::norm(ex + cplx{0.0, 1.0} * ey);
    }
    const double axis = lhcp + rhcp;
    const double peak = *std::max_element(map.intensity.begin(), map.intensity.end());
    if (axis > 1e-12 * peak * static_cast<double>(map.n_phi()) && std::abs(lhcp - rhcp) > 1e-9 * axis)
    {
        return maximize_waist(map, lhcp >= rhcp ? 1 : -1);
    }
    // No usable on-axis polarization: take the better handedness.
    const GaussianOverlap l = maximize_waist(map, 1);
    const GaussianOverlap r = maximize_waist(map, -1);
    return l.overlap >= r.overlap ? l : r;
}

double total_efficiency(double eta_zpl, double eta_col)
{
    require(eta_zpl >= 0.0 && eta_zpl <= 1.0, "total_efficiency: eta_zpl must lie in [0, 1]");
    require(eta_col >= 0.0 && eta_col <= 1.0, "total_efficiency: eta_col must lie in [0, 1]");
    return eta_zpl * eta_col;
}

FarFieldMap halve_grid(const FarFieldMap &map)
{
    check_map(map);
    require((map.n_theta() - 1) % 2 == 0 && map.n_theta() >= 3, "halve_grid: need an even number of theta intervals");
    require(map.n_phi() % 2 == 0, "halve_grid: need an even number of phi nodes");
    FarFieldMap out;
    for (std::size_t it = 0; it < map.n_theta(); it += 2)
    {
        out.theta.push_back(map.theta[it]);
    }
    for (std::size_t ip = 0; ip < map.n_phi(); ip += 2)
    {
        out.phi.push_back(map.phi[ip]);
    }
    for (std::size_t it = 0; it < map.n_theta(); it += 2)
    {
        for (std::size_t ip = 0; ip < map.n_phi(); ip += 2)
        {
            const std::size_t i = map.index(it, ip);
            out.e_theta.push_back(map.e_theta[i]);
            out.e_phi.push_back(map.e_phi[i]);
            out.intensity.push_back(map.intensity[i]);
        }
    }
    return out;
}

double halving_change(const FarFieldMap &map, double na)
{
    const double fine = collection_efficiency(map, na);
    const double coarse = collection_efficiency(halve_grid(map), na);
    if (fine == 0.0)
    {
        return coarse == 0.0 ? 0.0 : 1.0;
    }
    return std::abs(coarse - fine) / fine;
}

std::string report_json(const EfficiencyReport &r)
{
    nlohmann::ordered_json j;
    j["eta_zpl"] = round12(r.eta_zpl);
    j["eta_ex"] = round12(r.eta_ex);
    j["na"] = round12(r.na);
    j["eta_col"] = round12(r.eta_col);
    j["overlap_gauss"] = round12(r.overlap_gauss);
    j["waist_rad"] = round12(r.waist);
    j["eta_tot"] = round12(r.eta_tot);
    j["refinement_warning"] = r.refinement_warning;
    return j.dump(2) + "\n";
}

void write_curve_csv(const EfficiencyCurve &curve, std::ostream &out)
{
    out << "na,eta_col\n";
    for (const auto &[na, eta] : curve)
    {
        out << fmt_num(na) << ',' << fmt_num(eta) << '\n';
    }
}

void write_map_csv(const FarFieldMap &map, std::ostream &out)
{
    out << "theta,phi,e_theta_re,e_theta_im,e_phi_re,e_phi_im,intensity\n";
    for (std::size_t it = 0; it < map.n_theta(); ++it)
    {
        for (std::size_t ip = 0; ip < map.n_phi(); ++ip)
        {
            const std::size_t i = map.index(it, ip);
            out << fmt_num(map.theta[it]) << ',' << fmt_num(map.phi[ip]) << ',' << fmt_num(map.e_theta[i].real())
                << ',' << fmt_num(map.e_theta[i].imag()) << ',' << fmt_num(map.e_phi[i].real()) << ','
                << fmt_num(map.e_phi[i].imag()) << ',' << fmt_num(map.intensity[i]) << '\n';
        }
    }
}

} // namespace vtwin
