#pragma once

// Sectioned key = value run files:
//
//   [geometry]   r_d h a1 a2 d1 d2 r_h1 r_h2 z1 z2 n_diamond n_ox n_sio2
//                lambda0 alpha1 alpha2 M
//   [nearfield]  type (analytic|imported) file M rho_m w amp_rho amp_z
//   [emitter]    preset branch Fp Q V n_eff
//   [run]        u v layer na eta_ex hemisphere r_ff asymptotic layer2_only
//                max_radius1 max_radius2 annulus_inner annulus_outer seed
//                refinement_check threads
//   [optimize]   fraction, or one "lo, hi" pair per design parameter
//
// Complex values are written "re" or "re, im". '#' and ';' start comments.

#include "vtwin/workflow.hpp"

#include <iosfwd>
#include <string>

namespace vtwin
{

struct LoadedConfig
{
    RunConfig run;
    double bounds_fraction = 0.1;
    std::array<std::optional<std::pair<double, double>>, 8> bounds_override;
    std::optional<CavityMode> cavity;
    unsigned threads = 0;

    OptimizeBounds bounds() const;
};

/// Sets one key. Unknown keys and malformed values throw Parse errors that
/// name the section and key; `base_dir` resolves relative near-field paths.
void apply_setting(LoadedConfig &config, const std::string &section, const std::string &key,
                   const std::string &value, const std::string &base_dir = ".");

LoadedConfig load_config(const std::string &path);
LoadedConfig parse_config(std::istream &in, const std::string &source = "<stream>",
                          const std::string &base_dir = ".");

/// Writes every explicit setting back in the same format.
void write_config(const LoadedConfig &config, std::ostream &out);

/// "181x256" -> (181, 256).
std::pair<int, int> parse_hemisphere(const std::string &text);

} // namespace vtwin
