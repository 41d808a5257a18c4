#include "vtwin/dipole.hpp"

#include "vtwin/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

namespace vtwin
{
namespace
{
std::atomic<unsigned> configured_threads{0};

// Splits [0, count) into contiguous chunks, one per worker.
template <class Fn>
void parallel_for(std::size_t count, Fn &&fn)
{
    const unsigned workers = std::max(1u, std::min<unsigned>(worker_threads(), static_cast<unsigned>(count)));
    if (workers <= 1 || count < 64)
    {
        fn(std::size_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w)
    {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end)
        {
            break;
        }
        pool.emplace_back([&, w, begin, end] {
            try
            {
                fn(begin, end);
            }
            catch (...)
            {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto &t : pool)
    {
        t.join();
    }
    for (auto &e : errors)
    {
        if (e)
        {
            std::rethrow_exception(e);
        }
    }
}

Vec3 direction(double theta, double phi)
{
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}
} // namespace

void set_worker_threads(unsigned n)
{
    configured_threads = n;
}

unsigned worker_threads()
{
    const unsigned n = configured_threads.load();
    if (n != 0)
    {
        return n;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

DipoleSet merge(const DipoleSet &a, const DipoleSet &b)
{
    require(a.k == b.k, "merge: dipole sets radiate at different wavenumbers");
    DipoleSet out = a;
    out.positions.insert(out.positions.end(), b.positions.begin(), b.positions.end());
    out.moments.insert(out.moments.end(), b.moments.begin(), b.moments.end());
    return out;
}

FarFieldMap make_hemisphere(int n_theta, int n_phi, double na_node)
{
    require(n_theta >= 2 && n_phi >= 1, "make_hemisphere: need n_theta >= 2 and n_phi >= 1");
    require(na_node >= 0.0 && na_node <= 1.0, "make_hemisphere: NA node must lie in [0, 1]");
    FarFieldMap map;
    const int intervals = n_theta - 1;
    const double half = pi / 2.0;
    const double theta_a = std::asin(na_node);

    int split = 0;
    if (theta_a > 0.0 && theta_a < half && intervals >= 2)
    {
        const double frac = theta_a / half;
        if (intervals % 2 == 0 && intervals >= 4)
        {
            split = 2 * static_cast<int>(std::lround(frac * intervals / 2.0));
            split = std::clamp(split, 2, intervals - 2);
        }
        else
        {
            split = std::clamp(static_cast<int>(std::lround(frac * intervals)), 1, intervals - 1);
        }
    }
    map.theta.resize(static_cast<std::size_t>(n_theta));
    for (int j = 0; j <= intervals; ++j)
    {
        double t = 0.0;
        if (split == 0)
        {
            t = half * j / intervals;
        }
        else if (j == split)
        {
            t = theta_a;
        }
        else if (j < split)
        {
            t = theta_a * j / split;
        }
        else
        {
            t = theta_a + (half - theta_a) * (j - split) / (intervals - split);
        }
        map.theta[static_cast<std::size_t>(j)] = t;
    }
    map.theta.back() = half;
    map.phi.resize(static_cast<std::size_t>(n_phi));
    for (int i = 0; i < n_phi; ++i)
    {
        map.phi[static_cast<std::size_t>(i)] = two_pi * i / n_phi;
    }
    const std::size_t n = map.theta.size() * map.phi.size();
    map.e_theta.assign(n, cplx{});
    map.e_phi.assign(n, cplx{});
    map.intensity.assign(n, 0.0);
    return map;
}

CVec3 dipole_field_at(const CVec3 &p, Vec3 src, Vec3 obs, double k)
{
    const Vec3 r = obs - src;
    const double d = r.norm();
    if (!(d >= singularity_guard))
    {
        std::ostringstream msg;
        msg << "dipole field: observation point within " << singularity_guard << " of source at (" << src.x << ", "
            << src.y << ", " << src.z << ")";
        fail(ErrorCode::Singularity, msg.str());
    }
    const Vec3 n = (1.0 / d) * r;
    const cplx np = dot(n, p);
    const CVec3 nn = to_complex(n);
    const CVec3 transverse = p - np * nn;            // (n x p) x n
    const CVec3 static_part = (3.0 * np) * nn - p;   // 3 n (n.p) - p
    const cplx phase = std::exp(cplx{0.0, k * d});
    const cplx c_far = k * k / d;
    const cplx c_near = cplx{1.0 / (d * d * d), -k / (d * d)};
    return phase * (c_far * transverse + c_near * static_part);
}

DipoleSet induce_moments(const ScattererLayer &layer, const FieldSampler &incident, double k)
{
    DipoleSet set;
    set.k = k;
    set.positions = layer.positions;
    set.moments.reserve(layer.size());
    for (const Vec3 &pos : layer.positions)
    {
        set.moments.push_back(layer.alpha * incident(pos));
    }
    return set;
}

FieldGrid superpose_field(const DipoleSet &dipoles, std::span<const Vec3> obs)
{
    require(dipoles.positions.size() == dipoles.moments.size(), "superpose_field: positions/moments size mismatch");
    FieldGrid grid;
    grid.points.assign(obs.begin(), obs.end());
    grid.values.assign(obs.size(), CVec3{});
    parallel_for(obs.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
        {
            CVec3 sum{};
            for (std::size_t n = 0; n < dipoles.size(); ++n)
            {
                if ((obs[i] - dipoles.positions[n]).norm() < singularity_guard)
                {
                    fail(ErrorCode::Singularity, "superpose_field: observation point " + std::to_string(i) +
                                                     " coincides with dipole " + std::to_string(n));
                }
                sum += dipole_field_at(dipoles.moments[n], dipoles.positions[n], obs[i], dipoles.k);
            }
            grid.values[i] = sum;
        }
    });
    return grid;
}

FarFieldMap radiate(const DipoleSet &dipoles, const FarFieldMap &grid, const FarFieldOptions &opts)
{
    require(opts.asymptotic || opts.r_ff > 0.0, "radiate: far-field radius must be positive");
    FarFieldMap map = grid;
    const std::size_t np = map.n_phi();
    const double k = dipoles.k;
    const cplx strip = std::exp(cplx{0.0, -k * opts.r_ff}) * opts.r_ff;
    parallel_for(map.theta.size() * np, [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx)
        {
            const double th = map.theta[idx / np];
            const double ph = map.phi[idx % np];
            const Vec3 dir = direction(th, ph);
            CVec3 e{};
            if (opts.asymptotic)
            {
                const CVec3 dd = to_complex(dir);
                for (std::size_t n = 0; n < dipoles.size(); ++n)
                {
                    const CVec3 &p = dipoles.moments[n];
                    const CVec3 t = p - dot(dir, p) * dd;
                    const cplx phase = std::exp(cplx{0.0, -k * dot(dir, dipoles.positions[n])});
                    e += (k * k * phase) * t;
                }
            }
            else
            {
                const Vec3 obs = opts.r_ff * dir;
                for (std::size_t n = 0; n < dipoles.size(); ++n)
                {
                    e += dipole_field_at(dipoles.moments[n], dipoles.positions[n], obs, k);
                }
                e = strip * e;
            }
            const Vec3 th_hat{std::cos(th) * std::cos(ph), std::cos(th) * std::sin(ph), -std::sin(th)};
            const Vec3 ph_hat{-std::sin(ph), std::cos(ph), 0.0};
            map.e_theta[idx] = dot(th_hat, e);
            map.e_phi[idx] = dot(ph_hat, e);
            map.intensity[idx] = std::norm(map.e_theta[idx]) + std::norm(map.e_phi[idx]);
        }
    });
    return map;
}

void normalize(FarFieldMap &map)
{
    const double peak = map.intensity.empty() ? 0.0 : *std::max_element(map.intensity.begin(), map.intensity.end());
    if (!(peak > 0.0))
    {
        return;
    }
    const double s = 1.0 / std::sqrt(peak);
    for (std::size_t i = 0; i < map.intensity.size(); ++i)
    {
        map.e_theta[i] *= s;
        map.e_phi[i] *= s;
        map.intensity[i] = std::norm(map.e_theta[i]) + std::norm(map.e_phi[i]);
    }
}

CascadeResult cascade_two_layers(const NearFieldSpec &nearfield, const ScattererLayer &layer1,
                                 const ScattererLayer &layer2, const FarFieldMap &grid, const CascadeOptions &opts)
{
    require(layer1.layer_id == 1 && layer2.layer_id == 2, "cascade: expected layer 1 then layer 2");
    CascadeResult out;
    out.layer1 = induce_moments(layer1, [&](Vec3 p) { return sample_nearfield(nearfield, p); });

    const FieldGrid intermediate = superpose_field(out.layer1, layer2.positions);
    out.layer2.k = out.layer1.k;
    out.layer2.positions = layer2.positions;
    out.layer2.moments.reserve(layer2.size());
    for (const CVec3 &e : intermediate.values)
    {
        out.layer2.moments.push_back(layer2.alpha * e);
    }

    const DipoleSet radiators = opts.layer2_only ? out.layer2 : merge(out.layer1, out.layer2);
    out.map = radiate(radiators, grid, opts.far);
    normalize(out.map);
    return out;
}

} // namespace vtwin
