#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "vtwin/error.hpp"
#include "vtwin/workflow.hpp"

#include <cmath>
#include <random>

using namespace vtwin;

namespace
{
RunConfig coarse()
{
    RunConfig c;
    c.n_theta = 61;
    c.n_phi = 64;
    return c;
}
} // namespace

TEST_CASE("resolve fills geometry-derived defaults")
{
    const RunConfig r = resolve(RunConfig{});
    CHECK(*r.rho_m == doctest::Approx(1.2687));
    CHECK(r.nearfield.rho_m == doctest::Approx(1.2687));
    CHECK(*r.max_radius1 == doctest::Approx(1.4687 + 0.5));
    CHECK(*r.max_radius2 == doctest::Approx(2.0 * 1.4687));
    CHECK(*r.annulus_inner == doctest::Approx(1.2687 - 0.75));
    CHECK(*r.annulus_outer == doctest::Approx(1.2687 + 0.75));
    CHECK(*r.geometry.z1 == doctest::Approx(0.3561 / 2.0));

    RunConfig bad;
    bad.na = 0.0;
    CHECK_THROWS_AS(resolve(bad), Error);
    bad = RunConfig{};
    bad.eta_ex = 1.2;
    CHECK_THROWS_AS(resolve(bad), Error);
}

TEST_CASE("dark configuration surfaces an undefined ratio")
{
    RunConfig c = coarse();
    c.geometry.alpha1 = 0.0;
    c.geometry.alpha2 = 0.0;
    try
    {
        run_pipeline(c);
        FAIL("expected an error");
    }
    catch (const Error &e)
    {
        CHECK(e.code() == ErrorCode::UndefinedRatio);
    }
}

TEST_CASE("configuration A report")
{
    const PipelineResult r = run_pipeline(coarse());
    const EfficiencyReport &rep = r.report;
    CHECK(rep.eta_col > 0.0);
    CHECK(rep.eta_col <= 1.0);
    CHECK(rep.overlap_gauss > 0.0);
    CHECK(rep.overlap_gauss <= 1.0);
    CHECK(rep.eta_zpl == doctest::Approx(62.0 / 62.25));
    CHECK(rep.eta_tot == doctest::Approx(rep.eta_zpl * rep.eta_col).epsilon(1e-15));
    CHECK(rep.curve.front().second == 0.0);
    CHECK(rep.curve.back().second == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.layer1_count > 0);
    CHECK(r.layer2_count > r.layer1_count);
}

TEST_CASE("repeated runs are bitwise identical")
{
    const PipelineResult a = run_pipeline(coarse());
    const PipelineResult b = run_pipeline(coarse());
    CHECK(report_json(a.report) == report_json(b.report));
    CHECK(a.map.e_theta == b.map.e_theta);
    CHECK(a.map.e_phi == b.map.e_phi);
}

TEST_CASE("sweep cells equal independent runs")
{
    RunConfig c = coarse();
    const SweepResult s = alignment_sweep(c, 1, 3);
    REQUIRE(s.offsets.size() == 6);
    REQUIRE(s.maps.size() == 6);
    const PipelineResult a = run_pipeline(c);
    CHECK(s.offsets[0].x == 0.0);
    CHECK(s.eta_col[0] == a.report.eta_col);
    for (std::size_t i = 0; i < s.offsets.size(); ++i)
    {
        RunConfig ci = c;
        ci.alignment = {s.offsets[i].x, s.offsets[i].y, 1};
        CHECK(run_pipeline(ci).report.eta_col == s.eta_col[i]);
        CHECK(s.eta_col[i] >= 0.0);
        CHECK(s.eta_col[i] <= c.eta_ex);
    }
}

TEST_CASE("fold-equivalent offsets give identical efficiencies")
{
    RunConfig c = coarse();
    const double a = c.geometry.a1;
    const Vec2 base{0.11, 0.04};
    c.alignment = {base.x, base.y, 1};
    const double ref = run_pipeline(c).report.eta_col;
    const double s3 = std::sqrt(3.0);
    const Vec2 images[] = {
        {base.x + a, base.y},
        {base.x + a / 2.0, base.y + a * s3 / 2.0},
        {-base.x, base.y},
        {base.x, -base.y},
        {0.5 * base.x - s3 / 2.0 * base.y, s3 / 2.0 * base.x + 0.5 * base.y},
    };
    for (const Vec2 &p : images)
    {
        c.alignment = {p.x, p.y, 1};
        CHECK(std::abs(run_pipeline(c).report.eta_col - ref) < 1e-10);
    }
}

TEST_CASE("statistics helpers")
{
    CHECK(mean({1.0, 2.0, 3.0}) == 2.0);
    CHECK(stddev({1.0, 1.0}) == 0.0);
    CHECK(stddev({1.0, 3.0}) == 1.0);
    CHECK_THROWS_AS(mean({}), Error);
}

TEST_CASE("design vector round trip")
{
    DeviceGeometry g;
    DesignVector x = design_vector(g);
    CHECK(x[0] == g.r_d);
    CHECK(x[7] == g.r_h2);
    x[2] = 0.6;
    CHECK(apply_design(g, x).a1 == 0.6);
    const OptimizeBounds b = bounds_around(g, 0.1);
    CHECK(b.lower[0] == doctest::Approx(0.9 * g.r_d));
    CHECK(b.upper[3] == doctest::Approx(1.1 * g.a2));
}

TEST_CASE("optimizer contracts")
{
    RunConfig c = coarse();
    c.n_theta = 31;
    c.n_phi = 32;
    const OptimizeBounds bounds = bounds_around(c.geometry, 0.1);

    const OptimizeResult one = optimize_geometry(c, bounds, 1, 7);
    REQUIRE(one.trace.size() == 1);
    CHECK(design_vector(one.best) == design_vector(c.geometry));
    CHECK(one.best_objective == design_objective(c));

    const OptimizeResult run = optimize_geometry(c, bounds, 40, 7);
    CHECK(run.trace.size() == 40);
    CHECK(run.best_objective >= run.trace.front().objective);
    for (std::size_t i = 1; i < run.trace.size(); ++i)
    {
        CHECK(run.trace[i].best >= run.trace[i - 1].best);
        for (std::size_t k = 0; k < 8; ++k)
        {
            CHECK(run.trace[i].x[k] >= bounds.lower[k]);
            CHECK(run.trace[i].x[k] <= bounds.upper[k]);
        }
    }
    const OptimizeResult again = optimize_geometry(c, bounds, 40, 7);
    CHECK(again.best_objective == run.best_objective);
    CHECK(design_vector(again.best) == design_vector(run.best));

    OptimizeBounds inverted = bounds;
    std::swap(inverted.lower[1], inverted.upper[1]);
    CHECK_THROWS_AS(optimize_geometry(c, inverted, 10, 1), Error);
    CHECK_THROWS_AS(optimize_geometry(c, bounds, 0, 1), Error);
}

TEST_CASE("invalid designs score zero")
{
    RunConfig c = coarse();
    c.geometry.r_h1 = c.geometry.a1;
    CHECK(design_objective(c) == 0.0);
}

TEST_CASE("optimizer recovers the reference objective from a perturbed start")
{
    RunConfig ref = coarse();
    ref.n_theta = 31;
    ref.n_phi = 32;
    const double target = design_objective(ref);
    const OptimizeBounds bounds = bounds_around(ref.geometry, 0.15);

    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    RunConfig start = ref;
    DesignVector x = design_vector(ref.geometry);
    for (double &v : x)
    {
        v *= 1.0 + u(rng);
    }
    start.geometry = apply_design(ref.geometry, x);
    const OptimizeResult r = optimize_geometry(start, bounds, 200, 11);
    MESSAGE("reference objective " << target << ", perturbed start " << r.trace.front().objective << ", best "
                                   << r.best_objective);
    CHECK(r.best_objective >= 0.95 * target);
}

TEST_CASE("ring model comparison")
{
    RingSpec ring;
    const auto rows = model_compare(ring, {6, 60});
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].rms_if < rows[0].rms_if);
    CHECK_THROWS_AS(model_compare(ring, {60, 6}), Error);
}

TEST_CASE("L = 0 ring intensity has exact N-fold symmetry")
{
    RingSpec ring;
    ring.N = 12;
    ring.L = 0;
    const DipoleSet d = ring_dipoles(ring);
    std::vector<Vec3> obs;
    std::vector<Vec3> rotated;
    const double step = two_pi / ring.N;
    for (int i = 0; i < 50; ++i)
    {
        const double r = 0.2 + 0.07 * i;
        const double p = 0.013 * i;
        obs.push_back({r * std::cos(p), r * std::sin(p), 2.0});
        rotated.push_back({r * std::cos(p + step), r * std::sin(p + step), 2.0});
    }
    const FieldGrid a = superpose_field(d, obs);
    const FieldGrid b = superpose_field(d, rotated);
    for (std::size_t i = 0; i < obs.size(); ++i)
    {
        CHECK(a.values[i].norm2() == doctest::Approx(b.values[i].norm2()).epsilon(1e-10));
    }
}
