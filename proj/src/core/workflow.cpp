#include "vtwin/workflow.hpp"

#include "vtwin/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace vtwin
{

RunConfig resolve(const RunConfig &config)
{
    RunConfig c = config;
    validate(c.geometry);
    c.geometry.z1 = c.geometry.height(1);
    require(c.alignment.layer == 1 || c.alignment.layer == 2, "run: alignment layer must be 1 or 2");
    require(c.n_theta >= 3 && c.n_phi >= 4, "run: hemisphere needs at least 3 x 4 nodes");
    require(c.na > 0.0 && c.na <= 1.0, "run: NA of record must lie in (0, 1]");
    require(c.eta_ex >= 0.0 && c.eta_ex <= 1.0, "run: eta_ex must lie in [0, 1]");
    require(c.emitter.branch >= 0.0 && c.emitter.Fp >= 0.0, "run: emitter branch and Fp must be non-negative");
    require(c.cascade.far.asymptotic || c.cascade.far.r_ff > 0.0, "run: r_ff must be positive");

    const bool analytic = c.nearfield.variant == NearFieldVariant::Analytic;
    if (analytic)
    {
        c.rho_m = c.rho_m.value_or(c.geometry.r_d - 0.2);
        c.nearfield.rho_m = *c.rho_m;
        const double w = c.nearfield.w;
        c.max_radius1 = c.max_radius1.value_or(c.geometry.r_d + 2.0 * w);
        c.annulus_inner = c.annulus_inner.value_or(std::max(0.0, c.nearfield.rho_m - 3.0 * w));
        c.annulus_outer = c.annulus_outer.value_or(c.nearfield.rho_m + 3.0 * w);
    }
    else
    {
        c.max_radius1 = c.max_radius1.value_or(c.geometry.r_d + 0.5);
        c.annulus_inner = c.annulus_inner.value_or(0.0);
        c.annulus_outer = c.annulus_outer.value_or(std::numeric_limits<double>::infinity());
    }
    c.max_radius2 = c.max_radius2.value_or(2.0 * c.geometry.r_d);
    validate(c.nearfield);
    require(*c.max_radius1 > 0.0 && *c.max_radius2 > 0.0, "run: layer radii must be positive");
    return c;
}

PipelineResult run_pipeline(const RunConfig &config)
{
    const RunConfig c = resolve(config);
    const DeviceGeometry &g = c.geometry;

    PipelineResult out;
    const double a = g.lattice_constant(c.alignment.layer);
    out.folded_offset = fold_to_reduced_domain({c.alignment.u, c.alignment.v}, a);
    const AlignmentOffset offset{out.folded_offset.x, out.folded_offset.y, c.alignment.layer};

    const ScattererLayer layer1 =
        select_interacting(build_layer(g, 1, offset, *c.max_radius1), *c.annulus_inner, *c.annulus_outer);
    const ScattererLayer layer2 = build_layer(g, 2, offset, *c.max_radius2);
    out.layer1_count = layer1.size();
    out.layer2_count = layer2.size();

    const FarFieldMap grid = make_hemisphere(c.n_theta, c.n_phi, c.na);
    CascadeResult cascade = cascade_two_layers(c.nearfield, layer1, layer2, grid, c.cascade);
    out.map = std::move(cascade.map);

    EfficiencyReport &r = out.report;
    r.na = c.na;
    r.eta_ex = c.eta_ex;
    r.eta_col = collection_efficiency(out.map, c.na, c.eta_ex);
    r.curve = efficiency_curve(out.map, c.eta_ex, uniform_na_grid());
    const GaussianOverlap ov = gaussian_overlap(out.map);
    r.overlap_gauss = ov.overlap;
    r.waist = ov.waist;
    r.eta_zpl = zpl_efficiency(c.emitter);
    r.eta_tot = total_efficiency(r.eta_zpl, r.eta_col);
    if (c.refinement_check && (c.n_theta - 1) % 2 == 0 && c.n_phi % 2 == 0)
    {
        r.refinement_warning = halving_change(out.map, c.na) > refinement_tolerance;
    }
    return out;
}

SweepResult alignment_sweep(const RunConfig &config, int layer, const std::vector<Vec2> &offsets)
{
    require(layer == 1 || layer == 2, "sweep: layer must be 1 or 2");
    SweepResult out;
    out.layer = layer;
    for (const Vec2 &o : offsets)
    {
        RunConfig c = config;
        c.alignment = {o.x, o.y, layer};
        c.refinement_check = false;
        PipelineResult r = run_pipeline(c);
        out.offsets.push_back(o);
        out.eta_col.push_back(r.report.eta_col);
        out.maps.push_back(std::move(r.map));
    }
    return out;
}

SweepResult alignment_sweep(const RunConfig &config, int layer, int grid_n)
{
    require(layer == 1 || layer == 2, "sweep: layer must be 1 or 2");
    const double a = config.geometry.lattice_constant(layer);
    return alignment_sweep(config, layer, reduced_domain_grid(grid_n, a));
}

double mean(const std::vector<double> &v)
{
    require(!v.empty(), "mean of empty sample");
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev(const std::vector<double> &v)
{
    const double m = mean(v);
    double s = 0.0;
    for (double x : v)
    {
        s += (x - m) * (x - m);
    }
    return std::sqrt(s / static_cast<double>(v.size()));
}

DesignVector design_vector(const DeviceGeometry &g)
{
    return {g.r_d, g.h, g.a1, g.a2, g.d1, g.d2, g.r_h1, g.r_h2};
}

DeviceGeometry apply_design(DeviceGeometry g, const DesignVector &x)
{
    g.r_d = x[0];
    g.h = x[1];
    g.a1 = x[2];
    g.a2 = x[3];
    g.d1 = x[4];
    g.d2 = x[5];
    g.r_h1 = x[6];
    g.r_h2 = x[7];
    return g;
}

OptimizeBounds bounds_around(const DeviceGeometry &g, double fraction)
{
    require(fraction > 0.0 && fraction < 1.0, "bounds_around: fraction must lie in (0, 1)");
    OptimizeBounds b;
    const DesignVector x = design_vector(g);
    for (std::size_t i = 0; i < x.size(); ++i)
    {
        b.lower[i] = x[i] * (1.0 - fraction);
        b.upper[i] = x[i] * (1.0 + fraction);
    }
    return b;
}

double design_objective(const RunConfig &config)
{
    try
    {
        RunConfig c = config;
        c.refinement_check = false;
        const PipelineResult r = run_pipeline(c);
        return r.report.eta_col * r.report.overlap_gauss;
    }
    catch (const Error &)
    {
        return 0.0;
    }
}

namespace
{
struct BudgetExhausted
{
};

class SimplexSearch
{
public:
    SimplexSearch(const RunConfig &config, const OptimizeBounds &bounds, int budget)
        : config_(config), bounds_(bounds), budget_(budget)
    {
    }

    DesignVector clamp(DesignVector x) const
    {
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            x[i] = std::clamp(x[i], bounds_.lower[i], bounds_.upper[i]);
        }
        return x;
    }

    double evaluate(const DesignVector &x)
    {
        if (static_cast<int>(result_.trace.size()) >= budget_)
        {
            throw BudgetExhausted{};
        }
        RunConfig c = config_;
        c.geometry = apply_design(c.geometry, x);
        const double f = design_objective(c);
        if (result_.trace.empty() || f > result_.best_objective)
        {
            result_.best_objective = f;
            best_x_ = x;
        }
        result_.trace.push_back({static_cast<int>(result_.trace.size()) + 1, x, f, result_.best_objective});
        return f;
    }

    double range(std::size_t i) const { return bounds_.upper[i] - bounds_.lower[i]; }

    const DesignVector &best_x() const { return best_x_; }
    OptimizeResult &result() { return result_; }

private:
    const RunConfig &config_;
    OptimizeBounds bounds_;
    int budget_;
    OptimizeResult result_;
    DesignVector best_x_{};
};

struct Vertex
{
    DesignVector x{};
    double f = 0.0;
};

DesignVector affine(const DesignVector &a, const DesignVector &b, double t)
{
    DesignVector out{};
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        out[i] = a[i] + t * (b[i] - a[i]);
    }
    return out;
}
} // namespace

OptimizeResult optimize_geometry(const RunConfig &config, const OptimizeBounds &bounds, int budget,
                                 std::uint64_t seed)
{
    require(budget >= 1, "optimize: budget must be at least one evaluation");
    for (std::size_t i = 0; i < bounds.lower.size(); ++i)
    {
        if (!std::isfinite(bounds.lower[i]) || !std::isfinite(bounds.upper[i]) || bounds.lower[i] > bounds.upper[i] ||
            bounds.lower[i] <= 0.0)
        {
            fail(ErrorCode::InvalidArgument, std::string("optimize: infeasible bounds for ") + design_parameter_names[i]);
        }
    }

    SimplexSearch search(config, bounds, budget);
    constexpr std::size_t dim = std::tuple_size_v<DesignVector>;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> step_frac(0.05, 0.15);

    try
    {
        search.evaluate(search.clamp(design_vector(config.geometry)));
        const int max_restarts = 3;
        for (int restart = 0; restart <= max_restarts; ++restart)
        {
            // Fresh simplex around the incumbent.
            std::vector<Vertex> simplex;
            simplex.push_back({search.best_x(), search.result().best_objective});
            for (std::size_t i = 0; i < dim; ++i)
            {
                DesignVector x = search.best_x();
                const double step = step_frac(rng) * search.range(i);
                x[i] += (rng() & 1u) ? step : -step;
                x = search.clamp(x);
                if (x[i] == search.best_x()[i])
                {
                    x[i] = std::clamp(search.best_x()[i] - step, bounds.lower[i], bounds.upper[i]);
                }
                simplex.push_back({x, search.evaluate(x)});
            }

            double last_best = search.result().best_objective;
            int idle = 0;
            for (;;)
            {
                std::stable_sort(simplex.begin(), simplex.end(),
                                 [](const Vertex &a, const Vertex &b) { return a.f > b.f; });
                double spread = 0.0;
                for (std::size_t v = 1; v < simplex.size(); ++v)
                {
                    for (std::size_t i = 0; i < dim; ++i)
                    {
                        const double r = search.range(i);
                        if (r > 0.0)
                        {
                            spread = std::max(spread, std::abs(simplex[v].x[i] - simplex[0].x[i]) / r);
                        }
                    }
                }
                if (spread < 1e-4 || idle > static_cast<int>(10 * dim))
                {
                    break; // stalled: restart
                }

                DesignVector centroid{};
                for (std::size_t v = 0; v + 1 < simplex.size(); ++v)
                {
                    for (std::size_t i = 0; i < dim; ++i)
                    {
                        centroid[i] += simplex[v].x[i] / static_cast<double>(dim);
                    }
                }
                Vertex &worst = simplex.back();
                const Vertex &second = simplex[simplex.size() - 2];

                const DesignVector xr = search.clamp(affine(centroid, worst.x, -1.0));
                const double fr = search.evaluate(xr);
                if (fr > simplex.front().f)
                {
                    const DesignVector xe = search.clamp(affine(centroid, worst.x, -2.0));
                    const double fe = search.evaluate(xe);
                    worst = fe > fr ? Vertex{xe, fe} : Vertex{xr, fr};
                }
                else if (fr > second.f)
                {
                    worst = {xr, fr};
                }
                else
                {
                    const bool outside = fr > worst.f;
                    const DesignVector xc = search.clamp(affine(centroid, outside ? xr : worst.x, 0.5));
                    const double fc = search.evaluate(xc);
                    if (fc > std::max(fr, worst.f))
                    {
                        worst = {xc, fc};
                    }
                    else
                    {
                        for (std::size_t v = 1; v < simplex.size(); ++v)
                        {
                            simplex[v].x = search.clamp(affine(simplex[0].x, simplex[v].x, 0.5));
                            simplex[v].f = search.evaluate(simplex[v].x);
                        }
                    }
                }

                if (search.result().best_objective > last_best)
                {
                    last_best = search.result().best_objective;
                    idle = 0;
                }
                else
                {
                    ++idle;
                }
            }
        }
    }
    catch (const BudgetExhausted &)
    {
    }

    OptimizeResult out = std::move(search.result());
    out.best = apply_design(config.geometry, search.best_x());
    return out;
}

DipoleSet ring_dipoles(const RingSpec &ring, double z)
{
    DipoleSet set;
    for (int n = 0; n < ring.N; ++n)
    {
        const double phi = two_pi * n / ring.N;
        const double c = std::cos(phi);
        const double s = std::sin(phi);
        set.positions.push_back({ring.rho_n * c, ring.rho_n * s, z});
        const cplx amp = ring.alpha1 * ring.e_nf * std::exp(cplx{0.0, ring.L * phi});
        if (ring.orientation == RingOrientation::Rho)
        {
            set.moments.push_back({amp * c, amp * s, cplx{}});
        }
        else
        {
            set.moments.push_back({cplx{}, cplx{}, amp});
        }
    }
    return set;
}

namespace
{
double normalized_rms(std::vector<double> a, std::vector<double> b)
{
    const double pa = *std::max_element(a.begin(), a.end());
    const double pb = *std::max_element(b.begin(), b.end());
    if (!(pa > 0.0) || !(pb > 0.0))
    {
        fail(ErrorCode::UndefinedRatio, "model_compare: a profile is identically zero");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        const double d = a[i] / pa - b[i] / pb;
        s += d * d;
    }
    return std::sqrt(s / static_cast<double>(a.size()));
}
} // namespace

std::vector<CompareRow> model_compare(const RingSpec &ring, const std::vector<int> &n_list,
                                      const CompareOptions &opts)
{
    validate(ring);
    require(opts.samples >= 2 && opts.theta_max > 0.0 && opts.theta_max < pi / 2.0 && opts.z_obs > 0.0,
            "model_compare: invalid sampling options");
    require(std::is_sorted(n_list.begin(), n_list.end()), "model_compare: N list must be ascending");

    std::vector<double> theta(static_cast<std::size_t>(opts.samples));
    for (int j = 0; j < opts.samples; ++j)
    {
        theta[static_cast<std::size_t>(j)] = opts.theta_max * j / (opts.samples - 1);
    }

    std::vector<CompareRow> rows;
    for (int n : n_list)
    {
        require(n >= 1, "model_compare: N must be positive");
        RingSpec r = ring;
        r.N = n;
        r.z_if = opts.z_obs;

        // Intermediate field on the plane z = z_obs.
        const DipoleSet layer1 = ring_dipoles(r);
        std::vector<Vec3> obs;
        for (double t : theta)
        {
            obs.push_back({opts.z_obs * std::tan(t), 0.0, opts.z_obs});
        }
        const FieldGrid discrete_if = superpose_field(layer1, obs);
        std::vector<double> d_if;
        std::vector<double> c_if;
        for (std::size_t j = 0; j < theta.size(); ++j)
        {
            const CVec3 &e = discrete_if.values[j];
            d_if.push_back(std::norm(e.x) + std::norm(e.y));
            const auto et = if_transverse(r, theta[j], 0.0);
            c_if.push_back(std::norm(et[0]) + std::norm(et[1]));
        }

        // Far field behind a Q-dipole layer-2 circle (layer-2 radiation only).
        const double rho_q = r.r_q * std::sin(r.theta_q);
        const double z_q = r.r_q * std::cos(r.theta_q);
        std::vector<Vec3> sites;
        for (int q = 0; q < r.Q_ring; ++q)
        {
            const double phi = two_pi * q / r.Q_ring;
            sites.push_back({rho_q * std::cos(phi), rho_q * std::sin(phi), z_q});
        }
        const FieldGrid at_sites = superpose_field(layer1, sites);
        DipoleSet layer2;
        layer2.positions = sites;
        for (const CVec3 &e : at_sites.values)
        {
            layer2.moments.push_back(r.alpha2 * e);
        }
        FarFieldMap dirs;
        dirs.theta = theta;
        dirs.phi = {0.0};
        dirs.e_theta.assign(theta.size(), cplx{});
        dirs.e_phi.assign(theta.size(), cplx{});
        dirs.intensity.assign(theta.size(), 0.0);
        const FarFieldMap ff = radiate(layer2, dirs, {r.r_ff, true});
        std::vector<double> c_ff;
        for (double t : theta)
        {
            const auto e = ff_closed_form(r, t, 0.0);
            c_ff.push_back(std::norm(e[0]) + std::norm(e[1]));
        }

        rows.push_back({n, normalized_rms(d_if, c_if), normalized_rms(ff.intensity, c_ff)});
    }
    return rows;
}

} // namespace vtwin
