#pragma once

#include "vtwin/dipole.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace vtwin
{

using EfficiencyCurve = std::vector<std::pair<double, double>>; // (NA, eta_col)

struct EfficiencyReport
{
    double eta_zpl = 0.0;
    double eta_ex = 1.0;
    double na = 0.7;
    double eta_col = 0.0;
    double overlap_gauss = 0.0;
    double waist = 0.0; // best Gaussian divergence angle [rad]
    double eta_tot = 0.0;
    bool refinement_warning = false;
    EfficiencyCurve curve;
};

/// Fraction of upper-hemisphere power inside theta_A = asin(NA), times eta_ex.
/// Trapezoid in theta on the stored nodes (linear interpolation of the last
/// partial interval), periodic trapezoid in phi.
double collection_efficiency(const FarFieldMap &map, double na, double eta_ex = 1.0);

/// collection_efficiency at each NA of an ascending grid.
EfficiencyCurve efficiency_curve(const FarFieldMap &map, double eta_ex, const std::vector<double> &na_grid);

/// NA grid 0, 1/(n-1), ..., 1.
std::vector<double> uniform_na_grid(int n = 101);

struct GaussianOverlap
{
    double overlap = 0.0;
    double waist = 0.0;
    int handedness = 1; // +1: (1, i)/sqrt2, -1: (1, -i)/sqrt2
};

/// Best modal overlap with exp(-theta^2 / theta_w^2) carrying uniform circular
/// polarization; theta_w in [0.01, 1.2] rad, located to 1e-4 rad.
GaussianOverlap gaussian_overlap(const FarFieldMap &map);

/// Overlap with one fixed Gaussian (no search).
double gaussian_overlap_at(const FarFieldMap &map, double waist, int handedness);

double total_efficiency(double eta_zpl, double eta_col);

/// Every other theta node and phi node. Requires an even number of theta intervals.
FarFieldMap halve_grid(const FarFieldMap &map);

/// Relative change of eta_col when the grid is halved; refinement is advised
/// above refinement_tolerance.
inline constexpr double refinement_tolerance = 2e-3;
double halving_change(const FarFieldMap &map, double na);

/// Flat JSON object of the scalar fields (12 significant digits).
std::string report_json(const EfficiencyReport &report);
void write_curve_csv(const EfficiencyCurve &curve, std::ostream &out);
void write_map_csv(const FarFieldMap &map, std::ostream &out);

} // namespace vtwin
