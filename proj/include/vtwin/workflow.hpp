#pragma once

#include "vtwin/analytic.hpp"
#include "vtwin/dipole.hpp"
#include "vtwin/geometry.hpp"
#include "vtwin/metrics.hpp"
#include "vtwin/nearfield.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace vtwin
{

/// Everything one end-to-end run needs. Optional fields resolve from the
/// geometry at run time so that optimizer moves carry them along.
struct RunConfig
{
    DeviceGeometry geometry;
    NearFieldSpec nearfield;
    std::string nearfield_file;   // set when the near field was imported
    std::optional<double> rho_m;  // analytic WGM radius, default r_d - 0.2
    AlignmentOffset alignment;
    int n_theta = 181;
    int n_phi = 256;
    double na = 0.7;
    double eta_ex = 1.0;
    EmitterSpec emitter{"SnV", 0.25, 62.0};
    CascadeOptions cascade;
    std::optional<double> max_radius1;   // default r_d + 2 w
    std::optional<double> max_radius2;   // default 2 r_d
    std::optional<double> annulus_inner; // default rho_m - 3 w (analytic only)
    std::optional<double> annulus_outer; // default rho_m + 3 w (analytic only)
    std::uint64_t seed = 1;
    bool refinement_check = true;
};

/// Fills every optional with its resolved value and validates the result.
RunConfig resolve(const RunConfig &config);

struct PipelineResult
{
    EfficiencyReport report;
    FarFieldMap map;
    Vec2 folded_offset;
    std::size_t layer1_count = 0;
    std::size_t layer2_count = 0;
};

/// Layers -> folded alignment -> dipole cascade -> efficiency metrics.
PipelineResult run_pipeline(const RunConfig &config);

struct SweepResult
{
    int layer = 1;
    std::vector<Vec2> offsets;
    std::vector<double> eta_col;
    std::vector<FarFieldMap> maps;
};

/// run_pipeline at each offset with only `layer` translated.
SweepResult alignment_sweep(const RunConfig &config, int layer, const std::vector<Vec2> &offsets);
SweepResult alignment_sweep(const RunConfig &config, int layer, int grid_n);

double mean(const std::vector<double> &v);
double stddev(const std::vector<double> &v);

// Parameters the optimizer moves, in this order.
inline constexpr std::array<const char *, 8> design_parameter_names{"r_d", "h",  "a1",   "a2",
                                                                     "d1",  "d2", "r_h1", "r_h2"};
using DesignVector = std::array<double, 8>;

DesignVector design_vector(const DeviceGeometry &g);
DeviceGeometry apply_design(DeviceGeometry g, const DesignVector &x);

struct OptimizeBounds
{
    DesignVector lower{};
    DesignVector upper{};
};

/// +-fraction box around a geometry.
OptimizeBounds bounds_around(const DeviceGeometry &g, double fraction);

struct TraceEntry
{
    int evaluation = 0;
    DesignVector x{};
    double objective = 0.0;
    double best = 0.0;
};

struct OptimizeResult
{
    DeviceGeometry best;
    double best_objective = 0.0;
    std::vector<TraceEntry> trace;
};

/// eta_col(NA of record) x Gaussian overlap; invalid or dark designs score 0.
double design_objective(const RunConfig &config);

/// Bounded Nelder-Mead simplex (clamped to the box) maximizing
/// design_objective, with up to three restarts on stall. Deterministic for a
/// given seed; the initial point is always the first evaluation.
OptimizeResult optimize_geometry(const RunConfig &config, const OptimizeBounds &bounds, int budget,
                                 std::uint64_t seed);

struct CompareOptions
{
    double z_obs = 1e3;     // intermediate observation plane
    double theta_max = 0.3; // rad
    int samples = 61;
};

struct CompareRow
{
    int N = 0;
    double rms_if = 0.0;
    double rms_ff = 0.0;
};

/// Normalized-intensity RMS discrepancy between the discrete dipole ring
/// and the closed-form fields, one row per ring size.
std::vector<CompareRow> model_compare(const RingSpec &ring, const std::vector<int> &n_list,
                                      const CompareOptions &opts = {});

/// Discrete N-dipole ring with uniform angular spacing and winding L.
DipoleSet ring_dipoles(const RingSpec &ring, double z = 0.0);

} // namespace vtwin
